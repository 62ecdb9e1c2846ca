#include "symmwave/verify.hpp"

#include "symmwave/parse.hpp"

namespace symmwave {

namespace {

Expr ut() { return Expr::var(VarId::ut()); }
Expr ur() { return Expr::var(VarId::ur()); }
Expr urr() { return Expr::var(VarId::urr()); }
Expr rvar() { return Expr::var(VarId::r()); }
Expr r_pow(const ParamScalar& w) { return Expr::var_pow(VarId::r(), w); }

}  // namespace

Expr symmetry_residual_char(const Expr& P, const WaveEq& eq) {
  Expr fu = eq.f.partial(VarId::u()), fur = eq.f.partial(VarId::ur());
  Expr gu = eq.g.partial(VarId::u()), gur = eq.g.partial(VarId::ur());
  Expr DrP = d_r(P);
  Expr res = d_t(d_t(P, eq), eq) - (fu + urr() * gu) * P - (fur + urr() * gur) * DrP -
             eq.g * d_r(DrP);
  return res;
}

Expr symmetry_residual(const Expr& tau, const Expr& xi, const Expr& eta, const WaveEq& eq) {
  Expr P = eta - tau * ut() - xi * ur();
  return symmetry_residual_char(P, eq);
}

std::pair<Expr, Expr> multiplier_residual(const Expr& Q, const WaveEq& eq) {
  if (Q.jet_order() > 1) fail("OrderTooHigh", "multiplier must be first-order");
  Expr fu = eq.f.partial(VarId::u()), fur = eq.f.partial(VarId::ur());
  Expr gu = eq.g.partial(VarId::u()), gur = eq.g.partial(VarId::ur());
  Expr r1 = d_t(d_t(Q, eq), eq) - (fu + urr() * gu) * Q + d_r((fur + urr() * gur) * Q) -
            d_r(d_r(eq.g * Q));
  Expr r2 = Expr::constant(2) * Q.partial(VarId::u()) + d_t(Q.partial(VarId::ut()), eq) -
            d_r(Q.partial(VarId::ur()));
  return {r1, r2};
}

Expr conslaw_residual(const Expr& T, const Expr& X, const WaveEq& eq) {
  return d_t(T, eq) + d_r(X);
}

OffShell characteristic_residual(const Expr& T, const Expr& X, const Expr& Q,
                                 const WaveEq& eq) {
  OffShell lhs = formal_dt(T) + OffShell::lift(formal_dr(X));
  OffShell rhs{Q, -(eq.g * urr() + eq.f) * Q};
  return lhs - rhs;
}

namespace {

struct DivergenceMatch {
  Expr A, B;
};

// solve D_t A + D_r B = target over a support ansatz
std::optional<DivergenceMatch> match_divergence(const OffShell& target,
                                                const std::vector<Expr>& extra_seeds,
                                                bool& cap_hit, int depth) {
  SupportOptions opt;
  opt.depth = depth;
  std::vector<Expr> seeds{target.rest, target.utt * ut()};
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());
  std::vector<Term> cands = support_candidates(seeds, opt);
  cap_hit = cands.size() >= opt.cap;

  std::vector<OffShell> cols;
  std::vector<Expr> cand_exprs;
  for (auto& c : cands) {
    Expr m = Expr::from_terms({c});
    cand_exprs.push_back(m);
    cols.push_back(formal_dt(m));                  // A-column
    cols.push_back(OffShell::lift(formal_dr(m)));  // B-column
  }
  auto sol = match_linear_offshell(cols, target);
  if (!sol) return std::nullopt;
  DivergenceMatch out;
  for (size_t i = 0; i < cand_exprs.size(); ++i) {
    out.A += (*sol)[2 * i] * cand_exprs[i];
    out.B += (*sol)[2 * i + 1] * cand_exprs[i];
  }
  return out;
}

}  // namespace

NoetherResult noether_check(const Expr& P, const Expr& L, const ParamScalar& weight,
                            const WaveEq& eq) {
  if (L.jet_order() > 1) fail("OrderTooHigh", "Lagrangian must be first-order");
  Expr rw = r_pow(weight);
  OffShell target = rw * prolong_apply_formal(P, L);

  std::optional<DivergenceMatch> m;
  bool cap_hit = false;
  for (int depth = 1; depth <= 2 && !m; ++depth)
    m = match_divergence(target, {rw * L * P}, cap_hit, depth);
  if (!m) {
    if (cap_hit)
      fail("AnsatzExhausted", "support heuristic exhausted for pr X L matching");
    fail("NotInvariant", "Lagrangian is not invariant under the generator (matching "
                         "system inconsistent)");
  }
  NoetherResult res;
  res.A = m->A;
  res.B = m->B;
  res.Q = rw * P;
  res.T = m->A - res.Q * L.partial(VarId::ut());
  res.X = m->B - res.Q * L.partial(VarId::ur());
  Expr check = conslaw_residual(res.T, res.X, eq);
  if (!check.is_zero())
    fail("Internal", "noether_check produced a non-conserved pair: " + check.str());
  return res;
}

namespace {

ParamScalar branch_value(const char* text, const ConditionBranch& br) {
  return apply_branch(parse_scalar(text), br);
}

}  // namespace

MorawetzSetup make_morawetz_A(const WaveEq& eq) {
  if (eq.family != Family::A) fail("BranchViolation", "identity 1 is for family A");
  const ConditionBranch& br = eq.branch;
  if (!branch_value("3*a - p*b", br).is_zero())
    fail("BranchViolation", "identity 1 requires 3a = pb on the branch");
  ParamScalar c = branch_value("c", br);
  ParamScalar n = branch_value("n", br), p = branch_value("p", br);
  ParamScalar lambda;
  if (c.is_zero()) {
    ParamScalar denom = ParamScalar(1) + p / ParamScalar(3);
    if (denom.is_zero()) fail("BranchViolation", "identity 1 requires p != -3");
    lambda = (ParamScalar(2) - n) / denom;
  } else {
    // c lambda = 0 forces lambda = 0, and then (1 + p/3) lambda = 2 - n forces n = 2
    lambda = ParamScalar(0);
    if (!(ParamScalar(2) - n).is_zero())
      fail("BranchViolation", "identity 1 with c != 0 requires n = 2");
  }
  MorawetzSetup s;
  s.family = Family::A;
  s.identity = 1;
  s.lambda = lambda;
  s.weight = n - ParamScalar(1);
  s.W = rvar() * ur() - Expr::constant(lambda) * Expr::var(VarId::u());
  Expr cbup = apply_branch(parse_expr("c + b*u^p"), br);
  // tL = (1/2)(r u_r - lam u) u_t^2 - (1/6)(r u_r - 3 lam u)(c + b u^p) u_r^2
  s.tildeL = ParamScalar(Rat(1, 2)) * s.W * ut() * ut() -
             ParamScalar(Rat(1, 6)) *
                 (rvar() * ur() - ParamScalar(3) * ParamScalar(lambda) * Expr::var(VarId::u())) *
                 cbup * ur() * ur();
  s.tilde_lambda = ParamScalar(1) - (n + lambda) / ParamScalar(2);
  return s;
}

MorawetzSetup make_morawetz_B1(const WaveEq& eq) {
  if (eq.family != Family::B) fail("BranchViolation", "identity 2 is for family B");
  const ConditionBranch& br = eq.branch;
  if (!branch_value("c", br).is_zero())
    fail("BranchViolation", "identity 2 requires c = 0");
  ParamScalar k = branch_value("a + b", br);
  if (k.is_zero()) fail("BranchViolation", "identity 2 requires k = a + b != 0");
  ParamScalar p = branch_value("p", br);
  ParamScalar m = apply_branch(radial_weight_m(), br);
  ParamScalar lambda = ParamScalar(1) - branch_value("(n-1)*b", br) / k;
  MorawetzSetup s;
  s.family = Family::B;
  s.identity = 2;
  s.lambda = lambda;
  s.weight = m;
  s.tilde_lambda = (ParamScalar(1) - m - lambda) / ParamScalar(2);
  Expr u = Expr::var(VarId::u());
  s.W = rvar() * ur() - Expr::constant(lambda) * u;
  ParamScalar p2 = p + ParamScalar(2), p3 = p + ParamScalar(3);
  Expr h, int_h;  // h(u_r) and its u_r-antiderivative
  Expr theta_term;
  if (p2.is_zero()) {
    h = parse_expr("ln(u_r)");
    int_h = parse_expr("u_r*ln(u_r) - u_r");
    ParamScalar m1 = m + ParamScalar(1);
    if (m1.is_zero()) fail("BranchViolation", "identity 2 with p = -2 requires m != -1");
    theta_term = Expr::constant((lambda - ParamScalar(1)) / m1) * rvar() * ur();
  } else if (p3.is_zero()) {
    h = Expr::var_pow(VarId::ur(), ParamScalar(-1));
    int_h = parse_expr("ln(u_r)");
  } else {
    h = Expr::var_pow(VarId::ur(), p2).scale(p2.inverse());
    int_h = Expr::var_pow(VarId::ur(), p3).scale((p2 * p3).inverse());
  }
  ParamScalar p1 = p + ParamScalar(1);
  if (p1.is_zero()) fail("BranchViolation", "identity 2 requires p != -1");
  // tL1 = (k/(p+1)) (2 r int(h) + (lam u - r u_r) h) [+ theta r u_r when p = -2]
  Expr tL1 = Expr::constant(k / p1) *
                 (Expr::constant(2) * rvar() * int_h +
                  (Expr::constant(lambda) * u - rvar() * ur()) * h) +
             theta_term;
  s.tildeL = ParamScalar(Rat(1, 2)) * s.W * ut() * ut() + tL1;
  return s;
}

MorawetzSetup make_morawetz_B2(const WaveEq& eq) {
  if (eq.family != Family::B) fail("BranchViolation", "identity 3 is for family B");
  const ConditionBranch& br = eq.branch;
  if (!branch_value("c", br).is_zero())
    fail("BranchViolation", "identity 3 requires c = 0");
  if (!branch_value("p + 2", br).is_zero())
    fail("BranchViolation", "identity 3 requires p = -2");
  ParamScalar k = branch_value("a + b", br);
  MorawetzSetup s;
  s.family = Family::B;
  s.identity = 3;
  s.weight = ParamScalar(0);
  s.lambda = ParamScalar(0);
  s.tilde_lambda = ParamScalar(0);
  s.W = ur();
  // tL1 = (k/(p+1)) (2 int(h) - u_r h) at p = -2, h = ln u_r
  Expr tL1 = Expr::constant(-k) * (Expr::constant(2) * parse_expr("u_r*ln(u_r) - u_r") -
                                   ur() * parse_expr("ln(u_r)"));
  s.tildeL = ParamScalar(Rat(1, 2)) * ur() * ut() * ut() + tL1;
  s.G = ut() * ut() + Expr::constant(branch_value("(n-1)*b", br)) * parse_expr("ln(r)");
  return s;
}

namespace {

Expr dilation_term(const MorawetzSetup& s) {
  // (r D_r + tilde_lambda)(r^w u_t^2) for identities 1-2, D_r G for identity 3
  if (s.identity == 3) return d_r(s.G);
  Expr rw_ut2 = r_pow(s.weight) * ut() * ut();
  return rvar() * d_r(rw_ut2) + Expr::constant(s.tilde_lambda) * rw_ut2;
}

}  // namespace

OffShell morawetz_identity_residual(const MorawetzSetup& s, const WaveEq& eq) {
  Expr rw = r_pow(s.weight);
  OffShell lhs{rw * s.W, -(rw * s.W) * (eq.g * urr() + eq.f)};
  OffShell rhs = -euler_u(rw * s.tildeL) - OffShell::lift(dilation_term(s));
  return lhs - rhs;
}

ReconstructedLaw morawetz_conslaw(const MorawetzSetup& s, const Expr& P, const WaveEq& eq) {
  Expr rw = r_pow(s.weight);
  Expr F = rw * s.tildeL;
  OffShell leftover = prolong_apply_formal(P, F) + OffShell::lift(P * dilation_term(s));
  std::optional<DivergenceMatch> m;
  bool cap_hit = false;
  for (int depth = 1; depth <= 2 && !m; ++depth)
    m = match_divergence(leftover, {F * P}, cap_hit, depth);
  if (!m)
    fail("ConditionsUnmet",
         cap_hit ? "dilation bookkeeping support exhausted"
                 : "identity times characteristic is not a total divergence at these "
                   "parameters");
  ReconstructedLaw law;
  law.T = P * F.partial(VarId::ut()) - m->A;
  law.X = P * F.partial(VarId::ur()) - m->B;
  law.Q = rw * s.W * P;
  Expr check = conslaw_residual(law.T, law.X, eq);
  if (!check.is_zero())
    fail("ConditionsUnmet", "assembled pair is not conserved: " + check.str());
  return law;
}

EquivalenceResult conslaw_equivalent(const Expr& T1, const Expr& X1, const Expr& T2,
                                     const Expr& X2, bool solve_scale) {
  // equations: s*T2 + D_r Theta = T1  and  s*X2 - D_t Theta = X1, with
  // Theta = Theta(t, r, u); the two components are stacked as an OffShell pair
  SupportOptions opt;
  opt.allow_ut = false;
  opt.allow_ur = false;
  opt.depth = 2;
  std::vector<Term> cands = support_candidates({T1, T2, X1, X2}, opt);

  std::vector<OffShell> cols;
  std::vector<Expr> cand_exprs;
  for (auto& c : cands) {
    Expr mth = Expr::from_terms({c});
    if (mth.jet_order() > 0 && mth.depends_on(VarId::ut())) continue;
    cand_exprs.push_back(mth);
    Expr drm = d_r(mth);
    Expr dtm = mth.partial(VarId::t()) + ut() * mth.partial(VarId::u());
    cols.push_back(OffShell{drm, -dtm});  // components: (T-equation, X-equation)
  }
  size_t theta_count = cand_exprs.size();
  OffShell target{T1, X1};
  if (solve_scale) {
    cols.push_back(OffShell{T2, X2});
  } else {
    target = target - OffShell{T2, X2};
  }
  auto sol = match_linear_offshell(cols, target);
  EquivalenceResult res;
  if (!sol) return res;
  res.equivalent = true;
  res.scale = solve_scale ? (*sol)[theta_count] : ParamScalar(1);
  for (size_t i = 0; i < theta_count; ++i) res.theta += (*sol)[i] * cand_exprs[i];
  if (solve_scale && res.scale.is_zero()) {
    // (T1, X1) matched the trivial law alone; only accept for genuinely zero pairs
    if (!(T1.is_zero() && X1.is_zero())) {
      res.equivalent = false;
    }
  }
  return res;
}

}  // namespace symmwave
