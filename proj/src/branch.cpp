#include "symmwave/branch.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace symmwave {

bool ConditionBranch::solves(Param v) const {
  for (auto& [pv, rhs] : equalities)
    if (pv == v) return true;
  return false;
}

ConditionBranch ConditionBranch::with_nonzero(const ParamScalar& s) const {
  ConditionBranch br = *this;
  br.nonzeros.push_back(s);
  return br;
}

std::string ConditionBranch::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [v, rhs] : equalities) {
    if (!first) os << ", ";
    first = false;
    os << param_name(v) << " := " << rhs.str();
  }
  for (auto& nz : nonzeros) {
    if (!first) os << ", ";
    first = false;
    os << nz.str() << " != 0";
  }
  if (first) os << "(unconditional)";
  return os.str();
}

ParamScalar apply_branch(const ParamScalar& s, const ConditionBranch& br) {
  ParamScalar r = s;
  for (auto& [v, rhs] : br.equalities) r = r.subst(v, rhs);
  return r;
}

Expr apply_branch(const Expr& e, const ConditionBranch& br) {
  Expr r = e;
  for (auto& [v, rhs] : br.equalities) r = r.subst_param(v, rhs);
  return r;
}

bool eval_conditions(const ConditionBranch& br, const ParamPoint& pt) {
  for (auto& [v, rhs] : br.equalities) {
    auto val = rhs.eval(pt);
    if (!val || *val != pt[static_cast<int>(v)]) return false;
  }
  for (auto& nz : br.nonzeros) {
    auto val = nz.eval(pt);
    if (!val || *val == 0) return false;
  }
  return true;
}

std::optional<ParamPoint> complete_point(const ConditionBranch& br,
                                         const ParamPoint& free_values) {
  ParamPoint pt = free_values;
  // back-substitute: the last solved parameter's rhs contains no other solved
  // parameter, earlier right-hand sides may reference later solved ones
  for (auto it = br.equalities.rbegin(); it != br.equalities.rend(); ++it) {
    auto val = it->second.eval(pt);
    if (!val) return std::nullopt;
    pt[static_cast<int>(it->first)] = *val;
  }
  for (auto& nz : br.nonzeros) {
    auto val = nz.eval(pt);
    if (!val || *val == 0) return std::nullopt;
  }
  return pt;
}

namespace {

// preferred solving order: a first (the tables' conditions are all rationally
// solvable for one parameter), then c, b, n, p
const Param kSolveOrder[] = {Param::A, Param::C, Param::B, Param::N, Param::P};

struct WorkBranch {
  ConditionBranch br;
  std::vector<ParamScalar> pending;  // factors still to solve, already substituted
};

// true when s is not identically zero after substituting the branch
bool nonzero_survives(const ParamScalar& s, const ConditionBranch& br) {
  try {
    return !apply_branch(s, br).is_zero();
  } catch (const Error&) {
    return false;  // a denominator died: treat the constraint as violated
  }
}

void solve_factor(const WorkBranch& wb, const ParamScalar& factor_in,
                  std::vector<WorkBranch>& out, int depth) {
  if (depth > 8) fail("UnsolvableEquality", "case splitting exceeded depth bound");
  ParamScalar f = apply_branch(factor_in, wb.br);
  if (f.is_zero()) {  // already satisfied
    out.push_back(wb);
    return;
  }
  if (f.is_constant()) return;  // contradiction: drop this case
  const Poly& poly = f.num();   // zero set of a rational function = zero set of numerator
  for (Param v : kSolveOrder) {
    if (poly.degree(v) != 1) continue;
    Poly lead = poly.coeff_of(v, 1);
    Poly rest = poly.coeff_of(v, 0);
    if (lead.is_constant()) {
      WorkBranch nb = wb;
      nb.br.equalities.push_back({v, ParamScalar(-rest, lead)});
      out.push_back(std::move(nb));
      return;
    }
    // case lead != 0: solve for v; case lead == 0: recurse on the reduced equation
    WorkBranch generic = wb;
    generic.br.equalities.push_back({v, ParamScalar(-rest, lead)});
    generic.br.nonzeros.push_back(ParamScalar(lead));
    out.push_back(std::move(generic));

    std::vector<WorkBranch> lead_zero;
    solve_factor(wb, ParamScalar(lead), lead_zero, depth + 1);
    for (auto& lz : lead_zero) solve_factor(lz, ParamScalar(rest), out, depth + 1);
    return;
  }
  fail("UnsolvableEquality", "no parameter occurs linearly in " + f.str());
}

}  // namespace

std::vector<ConditionBranch> branch_normalize(const std::vector<RawEquality>& equalities,
                                              const std::vector<ParamScalar>& nonzeros,
                                              const std::vector<ParamScalar>& prune_nonzeros) {
  std::vector<WorkBranch> work{WorkBranch{}};
  for (auto& eq : equalities) {
    std::vector<WorkBranch> next;
    for (auto& wb : work) {
      bool some_factor_already_zero = false;
      for (auto& f : eq.factors)
        if (apply_branch(f, wb.br).is_zero()) some_factor_already_zero = true;
      if (some_factor_already_zero) {
        next.push_back(wb);
        continue;
      }
      for (auto& f : eq.factors) solve_factor(wb, f, next, 0);
    }
    work = std::move(next);
  }

  std::vector<ConditionBranch> result;
  std::set<std::string> seen;
  for (auto& wb : work) {
    ConditionBranch br = wb.br;
    bool ok = true;
    std::vector<ParamScalar> all_nz = br.nonzeros;
    all_nz.insert(all_nz.end(), nonzeros.begin(), nonzeros.end());
    br.nonzeros.clear();
    for (auto& nz : all_nz) {
      if (!nonzero_survives(nz, br)) {
        ok = false;
        break;
      }
      ParamScalar reduced = apply_branch(nz, br);
      if (!reduced.is_constant()) br.nonzeros.push_back(nz);
    }
    for (auto& nz : prune_nonzeros)
      if (!nonzero_survives(nz, br)) ok = false;
    if (!ok) continue;
    std::string key = br.str();
    if (seen.insert(key).second) result.push_back(std::move(br));
  }
  return result;
}

}  // namespace symmwave
