#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symmwave/jet.hpp"
#include "symmwave/parse.hpp"

using namespace symmwave;

namespace {

WaveEq family_a_generic() { return make_wave_eq(Family::A, ConditionBranch{}); }

Expr random_onshell_expr(Rng& rng) {
  // products/sums over t, r, u, u_t, u_r, u_rr with occasional logs and
  // symbolic powers
  auto atom = [&]() -> Expr {
    switch (rng.range(0, 8)) {
      case 0: return Expr::var(VarId::t());
      case 1: return Expr::var(VarId::r());
      case 2: return Expr::var(VarId::u());
      case 3: return Expr::var(VarId::ut());
      case 4: return Expr::var(VarId::ur());
      case 5: return Expr::var(VarId::urr());
      case 6: return Expr::var_pow(VarId::ur(), ParamScalar::var(Param::P) + ParamScalar(1));
      case 7: return Expr::var(VarId::log_of(VarId::ur()));
      default: return Expr::var(VarId::log_of(VarId::r()));
    }
  };
  Expr e = atom();
  for (int i = 0; i < 3; ++i) {
    Expr x = atom();
    e = rng.range(0, 1) ? e * x : e + x;
  }
  return e;
}

}  // namespace

TEST_CASE("total derivatives: basics and product rule") {
  WaveEq eq = family_a_generic();
  CHECK(d_r(parse_expr("u")) == parse_expr("u_r"));
  CHECK(d_r(parse_expr("r^(n-1)*u_t")) ==
        parse_expr("(n-1)*r^(n-2)*u_t + r^(n-1)*u_tr"));
  // d_t u_t reduces on-shell to g u_rr + f for the family
  Expr want = parse_expr("(c + b*u^p)*(u_rr + (n-1)*u_r/r) + a*u^(p-1)*u_r^2");
  CHECK(d_t(parse_expr("u_t"), eq) == want);
}

TEST_CASE("mixed partials of the on-shell reduction commute") {
  WaveEq eqA = family_a_generic();
  CHECK(commuting_check(parse_expr("u_t"), eqA).is_zero());
  CHECK(commuting_check(parse_expr("u_r^(p+1)"), eqA).is_zero());
  CHECK(commuting_check(parse_expr("r*ln(u_r)*u_t"), eqA).is_zero());

  WaveEq eqB = make_wave_eq(Family::B, ConditionBranch{});
  Rng rng(4242);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_onshell_expr(rng);
    CAPTURE(e.str());
    CHECK(commuting_check(e, i % 2 ? eqA : eqB).is_zero());
  }
}

TEST_CASE("reduction is idempotent") {
  WaveEq eq = family_a_generic();
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Expr e = random_onshell_expr(rng);
    Expr once = d_t(e, eq);
    // reducing an already-reduced expression changes nothing: reduce() on the
    // lifted value is the identity
    CHECK(OffShell::lift(once).reduce(eq) == once);
  }
}

TEST_CASE("euler_u basics") {
  WaveEq eq = family_a_generic();
  // E_u(-u_t^2/2) has the formal second time derivative as its only content
  OffShell r = euler_u(parse_expr("-(1/2)*u_t^2"));
  CHECK(r.utt == parse_expr("1"));
  CHECK(r.rest.is_zero());
  CHECK(euler_u(parse_expr("u")).reduce(eq) == parse_expr("1"));
  CHECK_THROWS_WITH_AS((void)euler_u(parse_expr("u_rr")), doctest::Contains("OrderTooHigh"),
                       Error);
}

TEST_CASE("euler_u of the weighted Lagrangian recovers the equation (2a = pb)") {
  ConditionBranch br;
  br.equalities = {{Param::A, parse_scalar("p*b/2")}};
  WaveEq eq = make_wave_eq(Family::A, br);
  Expr L = apply_branch(parse_expr("(1/2)*(-u_t^2 + (c + b*u^p)*u_r^2)"), br);
  Expr rn1 = parse_expr("r^(n-1)");
  OffShell res = euler_u(rn1 * L);
  // delta L / delta u = r^(n-1) (u_tt - g u_rr - f)
  CHECK(res.utt == rn1);
  CHECK(res.rest == -(rn1 * (eq.g * Expr::var(VarId::urr()) + eq.f)));
}

TEST_CASE("euler_u annihilates null Lagrangians") {
  // D_t phi + D_r psi for point functions phi, psi
  Expr phi = parse_expr("t^2*r*u^3 + u");
  Expr psi = parse_expr("r^2*u^2 + t*u");
  Expr null_lagrangian =
      phi.partial(VarId::t()) + Expr::var(VarId::ut()) * phi.partial(VarId::u()) +
      psi.partial(VarId::r()) + Expr::var(VarId::ur()) * psi.partial(VarId::u());
  OffShell res = euler_u(null_lagrangian);
  CHECK(res.is_zero());
}

TEST_CASE("prolongation examples") {
  WaveEq eq = family_a_generic();
  // pr(u_t d/du) applied to L0 = -u_t^2/2 gives -u_t (g u_rr + f) on-shell
  Expr got = prolong_apply(parse_expr("u_t"), parse_expr("-(1/2)*u_t^2"), eq);
  CHECK(got == -(parse_expr("u_t") * (eq.g * Expr::var(VarId::urr()) + eq.f)));
  // scaling property: pr((r u_r - lam u) d/du) L0 = r D_r L0 - 2 lam L0, with
  // lam encoded as a free rational constant
  ParamScalar lam(Rat(5, 3));
  Expr W = parse_expr("r*u_r") - Expr::constant(lam) * parse_expr("u");
  Expr L0 = parse_expr("-(1/2)*u_t^2");
  Expr lhs = prolong_apply(W, L0, eq);
  Expr rhs = parse_expr("r") * d_r(L0) - Expr::constant(lam * 2) * L0;
  CHECK(lhs == rhs);
  // pr X of anything u-independent vanishes for P = 1
  CHECK(prolong_apply(parse_expr("1"), parse_expr("r^2 + t"), eq).is_zero());
}

TEST_CASE("operator identity W E_u(L) = pr Y L - D_t(W L_ut) - D_r(W L_ur)") {
  WaveEq eq = family_a_generic();
  Rng rng(31);
  for (int i = 0; i < 25; ++i) {
    // first-order W and L
    Expr W = random_onshell_expr(rng);
    Expr L = random_onshell_expr(rng);
    if (W.jet_order() > 1 || L.jet_order() > 1) continue;
    Expr lhs = (W * euler_u(L).reduce(eq)) - prolong_apply(W, L, eq) +
               d_t(W * L.partial(VarId::ut()), eq) + d_r(W * L.partial(VarId::ur()));
    CAPTURE(W.str());
    CAPTURE(L.str());
    CHECK(lhs.is_zero());
  }
}

TEST_CASE("jet order cap is enforced") {
  Expr top = Expr::var(VarId::jet(0, kMaxROrder));
  CHECK_THROWS_WITH_AS((void)d_r(top), doctest::Contains("JetOrderExceeded"), Error);
}
