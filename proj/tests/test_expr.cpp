#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symmwave/branch.hpp"
#include "symmwave/parse.hpp"

using namespace symmwave;

namespace {

// random expression trees over jets of order <= 1 with integer-affine
// exponents, suitable for exact evaluation
Expr random_expr(Rng& rng, int depth) {
  if (depth == 0) {
    switch (rng.range(0, 6)) {
      case 0: return Expr::var(VarId::t());
      case 1: return Expr::var(VarId::r());
      case 2: return Expr::var(VarId::u());
      case 3: return Expr::var(VarId::ut());
      case 4: return Expr::var(VarId::ur());
      case 5: {
        ParamScalar e =
            ParamScalar::var(static_cast<Param>(rng.range(0, 4))) + ParamScalar(rng.range(-2, 2));
        return Expr::var_pow(VarId::jet(0, static_cast<int>(rng.range(0, 1))), e);
      }
      default: return Expr::constant(ParamScalar(rng.rat(4, 3)));
    }
  }
  Expr lhs = random_expr(rng, depth - 1), rhs = random_expr(rng, depth - 1);
  switch (rng.range(0, 3)) {
    case 0: return lhs + rhs;
    case 1: return lhs - rhs;
    case 2: return lhs * rhs;
    default: return lhs.scale(ParamScalar(rng.nonzero_rat(3, 2)));
  }
}

Expr::ValueMap random_values(Rng& rng) {
  Expr::ValueMap m;
  m[VarId::t().sort_key()] = rng.rat(5, 3);
  m[VarId::r().sort_key()] = rng.nonzero_rat(5, 3) * rng.nonzero_rat(5, 3) + Rat(7);  // positive
  for (int to = 0; to <= 1; ++to)
    for (int ro = 0; ro <= kMaxROrder; ++ro) {
      Rat v = rng.rat(4, 3);
      m[VarId::jet(to, ro).sort_key()] = v * v + Rat(rng.range(1, 3));  // positive
    }
  return m;
}

ParamPoint integer_params(Rng& rng) {
  ParamPoint pt;
  for (int i = 0; i < kNumParams; ++i) pt[i] = Rat(rng.range(-3, 3));
  return pt;
}

}  // namespace

TEST_CASE("additive inverse and exponent arithmetic") {
  CHECK((parse_expr("u_t") + parse_expr("-u_t")).is_zero());
  CHECK(parse_expr("u^p * u") == parse_expr("u^(p+1)"));
  CHECK(parse_expr("r^(n-1) * r^(2-n)") == parse_expr("r"));
}

TEST_CASE("pow contracts") {
  CHECK(parse_expr("u_r").pow(ParamScalar::var(Param::P)) == parse_expr("u_r^p"));
  CHECK(parse_expr("(u_t + u_r)^2") ==
        parse_expr("u_t^2 + 2*u_t*u_r + u_r^2"));
  CHECK_THROWS_WITH_AS((void)parse_expr("u_t + u_r").pow(ParamScalar::var(Param::P)),
                       doctest::Contains("NonMonomialPower"), Error);
}

TEST_CASE("branch substitution examples") {
  // (2a - pb) u_r vanishes on a := pb/2
  Expr e = parse_expr("(2*a - p*b)*u_r");
  ConditionBranch br;
  br.equalities = {{Param::A, parse_scalar("p*b/2")}};
  CHECK(apply_branch(e, br).is_zero());

  // p := 1 merges c u^p with b u
  Expr f = parse_expr("c*u^p + b*u");
  ConditionBranch br2;
  br2.equalities = {{Param::P, ParamScalar(1)}};
  CHECK(apply_branch(f, br2) == parse_expr("(c + b)*u"));

  // c := 0 reduces the shift-scaling eta = b u + p c to b u
  ConditionBranch br3;
  br3.equalities = {{Param::C, ParamScalar(0)}};
  CHECK(apply_branch(parse_expr("b*u + p*c"), br3) == parse_expr("b*u"));
}

TEST_CASE("division-by-zero on branch is reported") {
  Expr e = parse_expr("u^p / (p+1)");
  ConditionBranch br;
  br.equalities = {{Param::P, ParamScalar(-1)}};
  CHECK_THROWS_WITH_AS((void)apply_branch(e, br), doctest::Contains("DivisionByZero"),
                       Error);
}

TEST_CASE("parse/render round trip on table-shaped inputs") {
  const char* samples[] = {
      "r^(n-1)*u_t",
      "(c + b*u^p)*u_r",
      "ln(u_r) + b*(n-1)*ln(r)",
      "r^m",
      "r^(-4*(p+1)/(p-2))*(u - ((p-2)/(p+2))*r*u_r)*u_t",
      "(1/2)*r^(4/5)*((5*r*u_r + 3*u)*(t*u_t^2 - 2*u*u_t))",
      "(r*ln(r))*(t*u_t - u)",
      "k*t*ln(u_r)",
  };
  for (auto* s : samples) {
    Expr e = parse_expr(s);
    CHECK(parse_expr(render(e)) == e);
  }
}

TEST_CASE("parser rejects bad input with positions") {
  CHECK_THROWS_WITH_AS((void)parse_expr("q + 1"), doctest::Contains("UnknownSymbol"), Error);
  CHECK_THROWS_WITH_AS((void)parse_expr("(u_t"), doctest::Contains("SyntaxError"), Error);
}

TEST_CASE("canonical-form soundness against exact evaluation") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Expr e1 = random_expr(rng, 3), e2 = random_expr(rng, 3);
    Expr diff = e1 - e2;
    bool canonical_zero = diff.is_zero();
    bool all_eval_zero = true;
    int points = 0;
    for (int k = 0; k < 20 && points < 20; ++k) {
      ParamPoint pt = integer_params(rng);
      Expr::ValueMap vals = random_values(rng);
      try {
        auto v = diff.eval_exact(pt, vals);
        ++points;
        if (!v.empty()) all_eval_zero = false;
      } catch (const Error&) {
        continue;  // parameter point hit a coefficient pole; resample
      }
    }
    if (points == 0) continue;
    ++checked;
    CHECK(canonical_zero == all_eval_zero);
    if (canonical_zero != all_eval_zero) break;
  }
  CHECK(checked > 120);
}

TEST_CASE("ring laws on random triples") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Expr a = random_expr(rng, 2), b = random_expr(rng, 2), c = random_expr(rng, 2);
    CHECK((a + b) - (b + a) == Expr::zero());
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("substitute_branch is idempotent and commutes with ring operations") {
  Rng rng(99);
  ConditionBranch br;
  br.equalities = {{Param::A, parse_scalar("p*b/2")}, {Param::C, ParamScalar(0)}};
  for (int trial = 0; trial < 30; ++trial) {
    Expr a = random_expr(rng, 2), b = random_expr(rng, 2);
    Expr sa = apply_branch(a, br), sb = apply_branch(b, br);
    CHECK(apply_branch(sa, br) == sa);
    CHECK(apply_branch(a + b, br) == sa + sb);
    CHECK(apply_branch(a * b, br) == sa * sb);
  }
}

TEST_CASE("scalar field: reduction, equality, substitution") {
  ParamScalar m = parse_scalar("b*(n-1)*(p+1)/(a+b)");
  CHECK((m / m).is_one());
  CHECK(parse_scalar("(a^2-b^2)/(a-b)") == parse_scalar("a+b"));
  // m reduces to n-1 on a := pb
  ParamScalar red = m.subst(Param::A, parse_scalar("p*b"));
  CHECK(red == parse_scalar("n-1"));
}
