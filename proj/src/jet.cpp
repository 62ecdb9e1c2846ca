#include "symmwave/jet.hpp"

#include <set>

namespace symmwave {

namespace {

// value variables (not logs) an expression depends on, via powers or logs
std::set<uint32_t> value_vars(const Expr& e) {
  std::set<uint32_t> vars;
  for (auto& t : e.terms())
    for (auto& f : t.factors) {
      VarId v = f.var.is_log() ? f.var.log_base() : f.var;
      vars.insert(v.sort_key());
    }
  return vars;
}

VarId var_from_key(uint32_t key) {
  if (key == VarId::t().sort_key()) return VarId::t();
  if (key == VarId::r().sort_key()) return VarId::r();
  if (key == VarId::lam().sort_key()) return VarId::lam();
  for (int to = 0; to <= 1; ++to)
    for (int ro = 0; ro <= kMaxROrder; ++ro)
      if (VarId::jet(to, ro).sort_key() == key) return VarId::jet(to, ro);
  fail("Internal", "unknown variable key");
}

}  // namespace

Expr onshell_utt_r(const WaveEq& eq, int k) {
  Expr rhs = eq.g * Expr::var(VarId::urr()) + eq.f;
  for (int i = 0; i < k; ++i) rhs = d_r(rhs);
  return rhs;
}

Expr d_r(const Expr& e) {
  Expr acc;
  for (uint32_t key : value_vars(e)) {
    VarId v = var_from_key(key);
    Expr dv;  // total r-derivative of the variable itself
    if (v.kind == VarId::kR)
      dv = Expr::constant(1);
    else if (v.is_jet())
      dv = Expr::var(VarId::jet(v.t_ord, v.r_ord + 1));
    else
      continue;  // t, lam
    acc += e.partial(v) * dv;
  }
  return acc;
}

Expr d_r(const Expr& e, const WaveEq&) { return d_r(e); }

Expr d_rk(const Expr& e, int k) {
  Expr r = e;
  for (int i = 0; i < k; ++i) r = d_r(r);
  return r;
}

Expr d_t(const Expr& e, const WaveEq& eq) {
  Expr acc;
  for (uint32_t key : value_vars(e)) {
    VarId v = var_from_key(key);
    Expr dv;
    if (v.kind == VarId::kT)
      dv = Expr::constant(1);
    else if (v.is_jet() && v.t_ord == 0)
      dv = Expr::var(VarId::jet(1, v.r_ord));
    else if (v.is_jet() && v.t_ord == 1)
      dv = onshell_utt_r(eq, v.r_ord);  // u_{tt r^k} -> D_r^k(g u_rr + f)
    else
      continue;
    acc += e.partial(v) * dv;
  }
  return acc;
}

Expr commuting_check(const Expr& e, const WaveEq& eq) {
  return d_t(d_r(e), eq) - d_r(d_t(e, eq));
}

Expr OffShell::reduce(const WaveEq& eq) const {
  if (utt.is_zero()) return rest;
  return rest + utt * onshell_utt_r(eq, 0);
}

std::string OffShell::str() const {
  return "(" + utt.str() + ")*u_tt + " + rest.str();
}

OffShell formal_dt(const Expr& e) {
  if (e.jet_order() > 1)
    fail("OrderTooHigh", "formal_dt requires a first-order expression, got " + e.str());
  Expr rest = e.partial(VarId::t()) + Expr::var(VarId::ut()) * e.partial(VarId::u()) +
              Expr::var(VarId::utr()) * e.partial(VarId::ur());
  return {e.partial(VarId::ut()), rest};
}

Expr formal_dr(const Expr& e) { return d_r(e); }

OffShell euler_u(const Expr& e) {
  if (e.jet_order() > 1)
    fail("OrderTooHigh",
         "euler_u is first-order only; expression depends on order-2 jets: " + e.str());
  OffShell dt_part = formal_dt(e.partial(VarId::ut()));
  Expr dr_part = formal_dr(e.partial(VarId::ur()));
  return OffShell{-dt_part.utt, e.partial(VarId::u()) - dr_part - dt_part.rest};
}

Expr euler_u_onshell(const Expr& e, const WaveEq& eq) { return euler_u(e).reduce(eq); }

Expr prolong_apply(const Expr& P, const Expr& target, const WaveEq& eq) {
  if (target.jet_order() > 1)
    fail("OrderTooHigh", "prolong_apply target must be first-order");
  return target.partial(VarId::u()) * P + target.partial(VarId::ut()) * d_t(P, eq) +
         target.partial(VarId::ur()) * d_r(P);
}

OffShell prolong_apply_formal(const Expr& P, const Expr& target) {
  if (target.jet_order() > 1)
    fail("OrderTooHigh", "prolong_apply target must be first-order");
  OffShell dtP = formal_dt(P);
  return OffShell::lift(target.partial(VarId::u()) * P +
                        target.partial(VarId::ur()) * formal_dr(P)) +
         target.partial(VarId::ut()) * dtP;
}

}  // namespace symmwave
