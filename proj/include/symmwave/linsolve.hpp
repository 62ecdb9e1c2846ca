#pragma once

#include <optional>
#include <vector>

#include "symmwave/jet.hpp"

namespace symmwave {

// Finds scalars x_j with sum_j x_j * columns[j] == target by matching
// coefficients of the canonical term keys; exact Gaussian elimination over
// the rational-function field. Underdetermined directions are set to zero;
// nullopt when inconsistent.
std::optional<std::vector<ParamScalar>> match_linear(const std::vector<Expr>& columns,
                                                     const Expr& target);
std::optional<std::vector<ParamScalar>> match_linear_offshell(
    const std::vector<OffShell>& columns, const OffShell& target);

// Monomial-support heuristic: candidate monomials generated from the seeds by
// antiderivative guesses (exponent bumps, with x^-1 -> ln x) and by trading
// u_tr / u_rr / formal u_tt factors for first-order ones. Restricted to
// first-order monomials over the listed variables. Coefficients stripped.
struct SupportOptions {
  bool allow_t = true;
  bool allow_u = true;
  bool allow_ut = true;
  bool allow_ur = true;
  int depth = 1;
  size_t cap = 512;
};
std::vector<Term> support_candidates(const std::vector<Expr>& seeds, const SupportOptions& opt);

// integral of a single term with respect to var (exponent bump or log);
// nullopt when the bumped exponent's denominator could vanish... the caller
// checks; always succeeds structurally for var exponents != -1 or == -1.
Term antiderivative_term(const Term& t, VarId var);

}  // namespace symmwave
