#pragma once

#include "symmwave/linsolve.hpp"

namespace symmwave {

// Point-symmetry determining equation: with P = eta - tau u_t - xi u_r,
//   D_t^2 P - (f_u + u_rr g_u) P - (f_ur + u_rr g_ur) D_r P - g D_r^2 P
// on-shell; identically zero iff (tau, xi, eta) generates a point symmetry.
// Branches are expected to be substituted into both generator and equation.
Expr symmetry_residual(const Expr& tau, const Expr& xi, const Expr& eta, const WaveEq& eq);
Expr symmetry_residual_char(const Expr& P, const WaveEq& eq);

// Multiplier determining system (adjoint equation and the self-adjointness
// condition 2 Q_u + D_t Q_ut - D_r Q_ur); both residuals vanish iff Q is a
// multiplier.
std::pair<Expr, Expr> multiplier_residual(const Expr& Q, const WaveEq& eq);

// D_t T + D_r X on-shell.
Expr conslaw_residual(const Expr& T, const Expr& X, const WaveEq& eq);

// Characteristic-form identity, before on-shell substitution (for first-order
// densities the Gamma correction vanishes):
//   D_t T + D_r X - (u_tt - g u_rr - f) Q
OffShell characteristic_residual(const Expr& T, const Expr& X, const Expr& Q,
                                 const WaveEq& eq);

// Noether check: find first-order A, B with r^weight pr X L = D_t A + D_r B by
// linear matching over a monomial-support ansatz; on success returns the
// Noether conserved pair T = A - Q L_ut, X = B - Q L_ur with Q = r^weight P.
// NotInvariant when the matching system is inconsistent, AnsatzExhausted when
// the support heuristic hits its cap.
struct NoetherResult {
  Expr A, B, Q, T, X;
};
NoetherResult noether_check(const Expr& P, const Expr& L, const ParamScalar& weight,
                            const WaveEq& eq);

// Variational radial dilation identities.
//   identity 1 (family A):  r^w W (u_tt-g u_rr-f) = -E_u(r^w tL) - (r D_r + tlam)(r^w u_t^2)
//   identity 2 (family B):  same shape with w = m
//   identity 3 (family B):  W (u_tt-g u_rr-f) = -E_u(tL) - D_r(G), W = u_r
struct MorawetzSetup {
  Family family = Family::A;
  int identity = 1;
  Expr W;
  ParamScalar lambda, tilde_lambda, weight;
  Expr tildeL;
  Expr G;  // identity 3 only
};

MorawetzSetup make_morawetz_A(const WaveEq& eq);
MorawetzSetup make_morawetz_B1(const WaveEq& eq);
MorawetzSetup make_morawetz_B2(const WaveEq& eq);

// off-shell residual of LHS - RHS; zero on the setup's branch
OffShell morawetz_identity_residual(const MorawetzSetup& setup, const WaveEq& eq);

// Multiplies the identity by the symmetry characteristic P (u_t, t u_t - u, or
// 1) and assembles the conservation law from the total-derivative bookkeeping;
// ConditionsUnmet when the residual bookkeeping does not close.
struct ReconstructedLaw {
  Expr Q, T, X;
};
ReconstructedLaw morawetz_conslaw(const MorawetzSetup& setup, const Expr& P,
                                  const WaveEq& eq);

// Equivalence up to a trivial conserved pair (D_r Theta, -D_t Theta), decided
// constructively by linear matching; optionally solves a scalar normalization
// s with (T1, X1) ~ s (T2, X2).
struct EquivalenceResult {
  bool equivalent = false;
  Expr theta;
  ParamScalar scale;
};
EquivalenceResult conslaw_equivalent(const Expr& T1, const Expr& X1, const Expr& T2,
                                     const Expr& X2, bool solve_scale);

}  // namespace symmwave
