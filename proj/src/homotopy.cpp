#include "symmwave/homotopy.hpp"

#include <sstream>

namespace symmwave {

namespace {

Expr ut() { return Expr::var(VarId::ut()); }
Expr ur() { return Expr::var(VarId::ur()); }
Expr uu() { return Expr::var(VarId::u()); }
Expr lam() { return Expr::var(VarId::lam()); }

}  // namespace

Expr scale_lambda(const Expr& e) {
  return e.scale_vars_by_lambda({VarId::u(), VarId::ut(), VarId::ur()});
}

Expr scale_lambda_partial(const Expr& e) {
  return e.scale_vars_by_lambda({VarId::ut(), VarId::ur()});
}

IntegrateResult integrate_lambda01(const Expr& e) {
  IntegrateResult res;
  for (auto& t : e.terms()) {
    ParamScalar s(0);
    long logk = 0;
    Term rest;
    rest.coeff = t.coeff;
    for (auto& f : t.factors) {
      if (f.var == VarId::lam()) {
        s = f.exp;
      } else if (f.var.kind == VarId::kLogLam) {
        logk = *f.exp.as_long();
      } else {
        rest.factors.push_back(f);
      }
    }
    ParamScalar s1 = s + ParamScalar(1);
    if (s1.is_zero())
      fail("NonIntegrableAtZero", "term with lam^(" + s.str() + ") does not integrate");
    if (s1.is_constant()) {
      if (s1.constant_value() <= 0)
        fail("NonIntegrableAtZero",
             "lam exponent " + s.str() + " <= -1: integrand does not vanish at lam = 0");
    } else {
      res.guards.push_back(s1);
    }
    // int_0^1 lam^s ln(lam)^k dlam = (-1)^k k! / (s+1)^(k+1)
    ParamScalar factor = s1.pow(-(logk + 1));
    long fact = 1;
    for (long i = 2; i <= logk; ++i) fact *= i;
    if (logk % 2 == 1) fact = -fact;
    rest.coeff = rest.coeff * factor * ParamScalar(fact);
    res.value += Expr::from_terms({rest});
  }
  return res;
}

HomotopyResult homotopy_TX(const Expr& Q, const WaveEq& eq) {
  if (Q.jet_order() > 1) fail("OrderTooHigh", "multiplier must be first-order");
  HomotopyResult out;
  std::vector<ParamScalar> guards;
  auto integ = [&](const Expr& integrand) {
    IntegrateResult ir = integrate_lambda01(integrand);
    guards.insert(guards.end(), ir.guards.begin(), ir.guards.end());
    return ir.value;
  };

  // W = u_t int Q_ur(t,r,u,lam u_t,lam u_r) + u_r int g(r,u,lam u_r) Q_ut(...)
  Expr W = ut() * integ(scale_lambda_partial(Q.partial(VarId::ur()))) +
           ur() * integ(scale_lambda_partial(eq.g) *
                        scale_lambda_partial(Q.partial(VarId::ut())));
  out.W = W;

  Expr lam_u = lam() * uu();
  auto full = [](const Expr& e) { return scale_lambda(e); };

  Expr T = ut() * integ(full(Q) - lam_u * full(Q.partial(VarId::u()))) +
           ur() * integ(full(W) + lam_u * full(W.partial(VarId::u()))) -
           uu() * integ(full(eq.f) * full(Q.partial(VarId::ut())) +
                        full(Q.partial(VarId::t())) - full(W.partial(VarId::r())));

  Expr Qg = Q * eq.g;
  Expr X = -(ut() * integ(full(W) + lam_u * full(W.partial(VarId::u())))) -
           ur() * integ(full(Qg) - lam_u * full(Qg.partial(VarId::u()))) +
           uu() * integ(full(Q.partial(VarId::r())) * full(eq.g) -
                        full((Q * eq.f).partial(VarId::ur())) -
                        full(W.partial(VarId::t())));
  out.T = T;
  out.X = X;
  for (auto& g : guards) out.caveats.push_back("guard: (" + g.str() + ") != 0");
  return out;
}

bool tx_relations_hold(const Expr& Q, const Expr& T, const Expr& X, const WaveEq& eq,
                       std::string* which_failed) {
  auto check = [&](const Expr& e, const char* name) {
    if (e.is_zero()) return true;
    if (which_failed) *which_failed = name;
    return false;
  };
  return check(T.partial(VarId::ut()) - Q, "dT/du_t = Q") &&
         check(X.partial(VarId::ur()) + eq.g * Q, "dX/du_r = -gQ") &&
         check(T.partial(VarId::ur()) + X.partial(VarId::ut()), "dT/du_r + dX/du_t = 0") &&
         check(T.partial(VarId::t()) + X.partial(VarId::r()) +
                   ut() * T.partial(VarId::u()) + ur() * X.partial(VarId::u()) +
                   eq.f * Q,
               "T_t + X_r + u_t T_u + u_r X_u = -fQ");
}

namespace {

// termwise antiderivative with respect to u_t (Q is at most linear in u_t, so
// exponents stay small nonnegative integers)
Expr ut_antider(const Expr& e) {
  Expr acc;
  for (auto& t : e.terms()) {
    Term nt = antiderivative_term(t, VarId::ut());
    if (nt.find_exp(VarId::log_of(VarId::ut())) && !t.find_exp(VarId::log_of(VarId::ut())))
      fail("NonIntegrableAtZero", "u_t^-1 term in density integration");
    ParamScalar new_exp(1);
    for (auto& f : nt.factors)
      if (f.var == VarId::ut()) new_exp = f.exp;
    nt.coeff = t.coeff / new_exp;
    acc += Expr::from_terms({nt});
  }
  return acc;
}

}  // namespace

HomotopyResult reconstruct_direct(const Expr& Q, const WaveEq& eq) {
  if (Q.jet_order() > 1) fail("OrderTooHigh", "multiplier must be first-order");
  Expr T0 = ut_antider(Q);
  Expr X0 = -ut_antider(T0.partial(VarId::ur()));

  auto r2_of = [&](const Expr& Xpart) { return Xpart.partial(VarId::ur()); };
  auto r4_of = [&](const Expr& Tpart, const Expr& Xpart) {
    return Tpart.partial(VarId::t()) + Xpart.partial(VarId::r()) +
           ut() * Tpart.partial(VarId::u()) + ur() * Xpart.partial(VarId::u());
  };

  SupportOptions opt;
  opt.allow_ut = false;
  opt.depth = 2;
  Expr target_r2 = -(eq.g * Q) - r2_of(X0);
  Expr target_r4 = -(eq.f * Q) - r4_of(T0, X0);
  std::vector<Term> cands =
      support_candidates({target_r2, target_r4, eq.g * Q, T0, X0}, opt);

  // unknowns: A (added to T, no u_t dependence) and B (added to X, no u_t)
  std::vector<Expr> cand_exprs;
  std::vector<OffShell> cols;  // components: (relation R2, relation R4)
  for (auto& c : cands) {
    Expr m = Expr::from_terms({c});
    // column for A-coefficient: T += m, X += -u_t * dm/du_r
    Expr xa = -(ut() * m.partial(VarId::ur()));
    cols.push_back(OffShell{r2_of(xa), r4_of(m, xa)});
    // column for B-coefficient: X += m
    cols.push_back(OffShell{r2_of(m), r4_of(Expr::zero(), m)});
    cand_exprs.push_back(m);
  }
  OffShell target{target_r2, target_r4};
  auto sol = match_linear_offshell(cols, target);
  if (!sol)
    fail("AnsatzExhausted",
         "direct integration ansatz failed for Q = " + Q.str());
  Expr A, B;
  for (size_t i = 0; i < cand_exprs.size(); ++i) {
    A += (*sol)[2 * i] * cand_exprs[i];
    B += (*sol)[2 * i + 1] * cand_exprs[i];
  }
  HomotopyResult out;
  out.T = T0 + A;
  out.X = X0 - ut() * A.partial(VarId::ur()) + B;
  out.caveats.push_back("route: direct integration of the defining relations");
  std::string why;
  if (!tx_relations_hold(Q, out.T, out.X, eq, &why))
    fail("Internal", "direct reconstruction violated " + why);
  return out;
}

}  // namespace symmwave
