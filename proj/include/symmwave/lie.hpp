#pragma once

#include <map>

#include "symmwave/expr.hpp"

namespace symmwave {

// Vector field on (t, r, u) for point generators, extended with (u_t, u_r)
// components for the restricted contact generators. Components are functions
// of the base coordinates only (plus u_t, u_r in the contact case).
struct CanonicalField {
  std::array<Expr, 5> comp;  // d/dt, d/dr, d/du, d/du_t, d/du_r
  bool is_point() const;
  bool is_zero() const;
  std::string str() const;
};

// standard Lie bracket [X, Y]^i = X(Y^i) - Y(X^i)
CanonicalField commutator(const CanonicalField& X, const CanonicalField& Y);

CanonicalField field_scale(const CanonicalField& X, const ParamScalar& s);
CanonicalField field_sub(const CanonicalField& X, const CanonicalField& Y);

// exact linear-combination recognition in the span of the generators;
// nullopt when the field is outside the span
std::optional<std::vector<ParamScalar>> in_span(const CanonicalField& X,
                                                const std::vector<CanonicalField>& gens);

struct BracketClaim {
  size_t i = 0, j = 0;                           // generator indices
  std::map<size_t, ParamScalar> combination;     // claimed [gi, gj]
  bool expect_mismatch = false;                  // documented anomaly
  std::string note;
};

struct BracketMismatch {
  size_t i = 0, j = 0;
  std::string expected, computed;
  bool was_documented = false;
};

struct AlgebraReport {
  bool all_claims_match = true;      // undocumented claims
  bool closure_ok = true;            // every computed bracket lies in the span
  bool jacobi_ok = true;
  bool anomalies_as_documented = true;  // each documented anomaly indeed mismatches
  std::vector<BracketMismatch> mismatches;
  bool ok() const {
    return all_claims_match && closure_ok && jacobi_ok && anomalies_as_documented;
  }
};

AlgebraReport verify_algebra(const std::vector<CanonicalField>& gens,
                             const std::vector<BracketClaim>& claims);

}  // namespace symmwave
