#pragma once

#include "symmwave/verify.hpp"

namespace symmwave {

// substitutes (u, u_t, u_r) -> (lam u, lam u_t, lam u_r); log factors split as
// ln(v) -> ln(lam) + ln(v)
Expr scale_lambda(const Expr& e);
// derivative-only scaling (u_t, u_r) -> (lam u_t, lam u_r), u untouched
Expr scale_lambda_partial(const Expr& e);

// termwise integral over lam in [0,1]: lam^s -> 1/(s+1), lam^s ln lam ->
// -1/(s+1)^2. Guards record exponents whose s+1 is not provably nonzero on the
// branch; NonIntegrableAtZero when s+1 vanishes identically or s is a rational
// constant <= -1 (the vanishing-at-zero hypothesis fails).
struct IntegrateResult {
  Expr value;
  std::vector<ParamScalar> guards;
};
IntegrateResult integrate_lambda01(const Expr& e);

struct HomotopyResult {
  Expr T, X, W;
  std::vector<std::string> caveats;
};

// The explicit homotopy integration formulas reconstructing (T, X) from a
// multiplier Q. NonIntegrableAtZero propagates with the offending term.
HomotopyResult homotopy_TX(const Expr& Q, const WaveEq& eq);

// Direct route: solve dT/du_t = Q, dX/du_r = -gQ, dT/du_r + dX/du_t = 0,
// T_t + X_r + u_t T_u + u_r X_u = -f Q by linear matching (used on the
// log-bearing branches the homotopy formula excludes).
HomotopyResult reconstruct_direct(const Expr& Q, const WaveEq& eq);

// true iff the four defining relations hold symbolically
bool tx_relations_hold(const Expr& Q, const Expr& T, const Expr& X, const WaveEq& eq,
                       std::string* which_failed = nullptr);

}  // namespace symmwave
