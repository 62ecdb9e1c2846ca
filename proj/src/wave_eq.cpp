#include "symmwave/wave_eq.hpp"

#include "symmwave/parse.hpp"

namespace symmwave {

const char* family_name(Family f) { return f == Family::A ? "A" : "B"; }

std::optional<Family> family_from_name(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "B" || s == "b") return Family::B;
  return std::nullopt;
}

ParamScalar admissibility(Family f) {
  ParamScalar a = ParamScalar::var(Param::A), b = ParamScalar::var(Param::B),
              c = ParamScalar::var(Param::C), p = ParamScalar::var(Param::P),
              n = ParamScalar::var(Param::N);
  ParamScalar one(1);
  if (f == Family::A) {
    // (n-1)((bp)^2 + a^2 (c+b)^2) != 0
    return (n - one) * ((b * p).pow(2) + a.pow(2) * (c + b).pow(2));
  }
  // (n-1) p (b^2+c^2) ((b+a)^2 + b^2 c^2 (p+1)^2) != 0
  return (n - one) * p * (b.pow(2) + c.pow(2)) *
         ((b + a).pow(2) + b.pow(2) * c.pow(2) * (p + one).pow(2));
}

WaveEq make_wave_eq(Family f, const ConditionBranch& br) {
  ParamScalar adm = admissibility(f);
  bool adm_ok;
  try {
    adm_ok = !apply_branch(adm, br).is_zero();
  } catch (const Error&) {
    adm_ok = false;
  }
  if (!adm_ok)
    fail("InadmissibleEquation", "family " + std::string(family_name(f)) +
                                     " admissibility fails on branch {" + br.str() + "}");
  WaveEq eq;
  eq.family = f;
  eq.branch = br;
  if (f == Family::A) {
    eq.g = parse_expr("c + b*u^p");
    eq.f = parse_expr("(n-1)*(c + b*u^p)*u_r/r + a*u^(p-1)*u_r^2");
  } else {
    eq.g = parse_expr("c + (a+b)*u_r^p");
    eq.f = parse_expr("(n-1)*(c*u_r + b*u_r^(p+1))/r");
  }
  eq.g = apply_branch(eq.g, br);
  eq.f = apply_branch(eq.f, br);
  return eq;
}

ConditionBranch point_branch(const ParamPoint& pt) {
  ConditionBranch br;
  for (int i = 0; i < kNumParams; ++i)
    br.equalities.push_back({static_cast<Param>(i), ParamScalar(pt[i])});
  return br;
}

std::string point_str(const ParamPoint& pt) {
  std::string s = "(";
  for (int i = 0; i < kNumParams; ++i) {
    if (i) s += ", ";
    s += std::string(param_name(static_cast<Param>(i))) + "=" + rat_str(pt[i]);
  }
  return s + ")";
}

WaveEq make_wave_eq(Family f, const ParamPoint& pt) {
  return make_wave_eq(f, point_branch(pt));
}

namespace {
bool is_zero_on(const char* text, const ConditionBranch& br) {
  return apply_branch(parse_scalar(text), br).is_zero();
}
}  // namespace

Expr H_of_u(const ConditionBranch& br) {
  if (is_zero_on("p+1", br)) return parse_expr("ln(u)");
  return apply_branch(parse_expr("u^(p+1)/(p+1)"), br);
}

Expr h_of_ur(const ConditionBranch& br) {
  if (is_zero_on("p+2", br)) return parse_expr("ln(u_r)");
  return apply_branch(parse_expr("u_r^(p+2)/(p+2)"), br);
}

Expr alt_flux_B(const ConditionBranch& br) {
  if (is_zero_on("p+1", br))
    return apply_branch(parse_expr("(a+b)*ln(u_r) + b*(n-1)*ln(r)"), br);
  return apply_branch(parse_expr("((a+b)/(p+1))*u_r^(p+1)"), br);
}

ParamScalar radial_weight_m() { return parse_scalar("b*(n-1)*(p+1)/(a+b)"); }

StructureReport detect_structures(Family fam, const ParamPoint& pt) {
  auto adm = admissibility(fam).eval(pt);
  if (!adm || *adm == 0)
    fail("InadmissibleEquation",
         "point " + point_str(pt) + " violates the family admissibility inequality");
  ConditionBranch pb = point_branch(pt);
  auto val = [&](const char* text) { return *parse_scalar(text).eval(pt); };

  StructureReport rep;
  rep.hyperbolic = true;  // admissible points are hyperbolic by construction
  if (fam == Family::A) {
    bool quasi = val("b*p") != 0;
    rep.linearity = quasi ? StructureReport::Linearity::kQuasilinear
                          : StructureReport::Linearity::kSemilinear;
    // variational iff 2a = pb != 0; divergence iff a = pb != 0 (exclusive)
    if (quasi && val("2*a - p*b") == 0) {
      rep.variational = true;
      rep.lagrangian = apply_branch(parse_expr("(1/2)*(-u_t^2 + (c + b*u^p)*u_r^2)"), pb);
      rep.lagrangian_weight = parse_scalar("n-1");
    }
    if (quasi && val("a - p*b") == 0) {
      rep.divergence = true;
      rep.flux = apply_branch(parse_expr("(c + b*u^p)*u_r"), pb);
      rep.flux_weight = parse_scalar("n-1");
    }
    return rep;
  }

  bool quasi = val("(a+b)*p") != 0;
  rep.linearity = quasi ? StructureReport::Linearity::kQuasilinear
                        : StructureReport::Linearity::kSemilinear;
  bool standard = quasi && val("a - p*b") == 0 && val("p*(p+1)*b") != 0;
  bool alternative = val("c") == 0 && val("p*(a+b)") != 0;
  if (standard) {
    rep.variational = rep.divergence = true;
    Expr L = parse_expr("(1/2)*(-u_t^2 + c*u_r^2)") + Expr::param(Param::B) * h_of_ur(pb);
    rep.lagrangian = apply_branch(L, pb);
    rep.lagrangian_weight = parse_scalar("n-1");
    rep.flux = apply_branch(parse_expr("(c + b*u_r^p)*u_r"), pb);
    rep.flux_weight = parse_scalar("n-1");
  }
  if (alternative) {
    rep.alternative_structure = true;
    rep.variational = rep.divergence = true;
    ParamScalar m(*radial_weight_m().eval(pt));
    rep.m = m;
    Expr Ftilde = alt_flux_B(pb);
    // integral of Ftilde d u_r
    Expr intF;
    if (val("p+1") == 0) {
      // (k ln u_r + b(n-1) ln r) du_r -> k(u_r ln u_r - u_r) + b(n-1) u_r ln r
      intF = apply_branch(parse_expr("(a+b)*(u_r*ln(u_r) - u_r) + b*(n-1)*u_r*ln(r)"), pb);
    } else if (val("p+2") == 0) {
      intF = apply_branch(parse_expr("-(a+b)*ln(u_r)"), pb);
    } else {
      intF = apply_branch(parse_expr("((a+b)/((p+1)*(p+2)))*u_r^(p+2)"), pb);
    }
    rep.lagrangian = apply_branch(parse_expr("-(1/2)*u_t^2"), pb) + intF;
    rep.lagrangian_weight = m;
    rep.flux = Ftilde;
    rep.flux_weight = m;
    if (standard) rep.structures_coincide = true;  // then m = n-1
  }
  return rep;
}

}  // namespace symmwave
