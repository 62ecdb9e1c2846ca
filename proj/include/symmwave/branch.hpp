#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symmwave/expr.hpp"

namespace symmwave {

// A fully resolved case of a table "conditions" column: solved parameter
// equalities (triangular: each solved parameter is absent from all later
// right-hand sides) plus non-vanishing constraints.
struct ConditionBranch {
  std::vector<std::pair<Param, ParamScalar>> equalities;
  std::vector<ParamScalar> nonzeros;
  std::string provenance;

  bool solves(Param v) const;
  ConditionBranch with_nonzero(const ParamScalar& s) const;
  std::string str() const;
};

// sequential substitution of the solved equalities
ParamScalar apply_branch(const ParamScalar& s, const ConditionBranch& br);
Expr apply_branch(const Expr& e, const ConditionBranch& br);

// true iff all equalities hold and all nonzeros are nonzero at the point
bool eval_conditions(const ConditionBranch& br, const ParamPoint& pt);

// completes a point on the branch variety from values for the free
// parameters (back-substitutes the solved ones); nullopt when a right-hand
// side denominator vanishes or a nonzero constraint fails
std::optional<ParamPoint> complete_point(const ConditionBranch& br, const ParamPoint& free_values);

// One raw table equality: a product of polynomial factors that must vanish.
struct RawEquality {
  std::vector<ParamScalar> factors;
};

// Splits factored products into disjunct branches, triangularizes each by
// rationally solving one parameter at a time (case-splitting on leading
// coefficients), and prunes branches on which any nonzero constraint vanishes
// identically. prune_nonzeros (the family admissibility inequality) take part
// in the pruning but are not stored on the surviving branches.
// UnsolvableEquality when no parameter can be isolated rationally.
std::vector<ConditionBranch> branch_normalize(const std::vector<RawEquality>& equalities,
                                              const std::vector<ParamScalar>& nonzeros,
                                              const std::vector<ParamScalar>& prune_nonzeros = {});

}  // namespace symmwave
