#pragma once

#include "symmwave/wave_eq.hpp"

namespace symmwave {

// Total derivatives with the on-shell convention: any generated u_tt (or its
// r-derivatives) is replaced by D_r^k(g u_rr + f) immediately, so expressions
// never materialize second t-derivatives.
Expr d_r(const Expr& e);
Expr d_r(const Expr& e, const WaveEq& eq);  // same, signature parity
Expr d_t(const Expr& e, const WaveEq& eq);
Expr d_rk(const Expr& e, int k);

// D_t^k (g u_rr + f)? -- no: D_r^k of the right-hand side, used for the
// on-shell replacement of u_{tt r^k}
Expr onshell_utt_r(const WaveEq& eq, int k);

// contract: identically zero for every expression and admissible equation
Expr commuting_check(const Expr& e, const WaveEq& eq);

// value = utt_coeff * u_tt + rest, with u_tt kept formal (off-shell)
struct OffShell {
  Expr utt, rest;

  bool is_zero() const { return utt.is_zero() && rest.is_zero(); }
  OffShell operator-() const { return {-utt, -rest}; }
  friend OffShell operator+(const OffShell& x, const OffShell& y) {
    return {x.utt + y.utt, x.rest + y.rest};
  }
  friend OffShell operator-(const OffShell& x, const OffShell& y) {
    return {x.utt - y.utt, x.rest - y.rest};
  }
  friend OffShell operator*(const Expr& s, const OffShell& x) {
    return {s * x.utt, s * x.rest};
  }
  static OffShell lift(const Expr& e) { return {Expr::zero(), e}; }
  Expr reduce(const WaveEq& eq) const;  // substitute u_tt = g u_rr + f
  std::string str() const;
};

// formal total derivatives of a first-order expression (jet order <= 1)
OffShell formal_dt(const Expr& e);
Expr formal_dr(const Expr& e);

// first-order Euler-Lagrange operator
//   E_u = d/du - D_r d/du_r - D_t d/du_t
// OrderTooHigh when e contains u_rr, u_tr or higher
OffShell euler_u(const Expr& e);
Expr euler_u_onshell(const Expr& e, const WaveEq& eq);

// pr Y with Y = P d/du applied to a first-order target:
//   (dtarget/du) P + (dtarget/du_t) D_t P + (dtarget/du_r) D_r P
Expr prolong_apply(const Expr& P, const Expr& target, const WaveEq& eq);
OffShell prolong_apply_formal(const Expr& P, const Expr& target);

}  // namespace symmwave
