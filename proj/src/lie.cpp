#include "symmwave/lie.hpp"

#include "symmwave/linsolve.hpp"

namespace symmwave {

namespace {

const std::array<VarId, 5> kCoords = {VarId::t(), VarId::r(), VarId::u(), VarId::ut(),
                                      VarId::ur()};

// X applied to a scalar function on the 5-dimensional space
Expr apply_field(const CanonicalField& X, const Expr& func) {
  Expr acc;
  for (int i = 0; i < 5; ++i) {
    if (X.comp[i].is_zero()) continue;
    acc += X.comp[i] * func.partial(kCoords[i]);
  }
  return acc;
}

}  // namespace

bool CanonicalField::is_point() const {
  if (!comp[3].is_zero() || !comp[4].is_zero()) return false;
  for (int i = 0; i < 3; ++i)
    if (comp[i].depends_on(VarId::ut()) || comp[i].depends_on(VarId::ur())) return false;
  return true;
}

bool CanonicalField::is_zero() const {
  for (auto& c : comp)
    if (!c.is_zero()) return false;
  return true;
}

std::string CanonicalField::str() const {
  static const char* slots[5] = {"d/dt", "d/dr", "d/du", "d/du_t", "d/du_r"};
  std::string s;
  for (int i = 0; i < 5; ++i) {
    if (comp[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + comp[i].str() + ") " + slots[i];
  }
  return s.empty() ? "0" : s;
}

CanonicalField commutator(const CanonicalField& X, const CanonicalField& Y) {
  CanonicalField Z;
  for (int i = 0; i < 5; ++i) Z.comp[i] = apply_field(X, Y.comp[i]) - apply_field(Y, X.comp[i]);
  return Z;
}

CanonicalField field_scale(const CanonicalField& X, const ParamScalar& s) {
  CanonicalField Z;
  for (int i = 0; i < 5; ++i) Z.comp[i] = X.comp[i].scale(s);
  return Z;
}

CanonicalField field_sub(const CanonicalField& X, const CanonicalField& Y) {
  CanonicalField Z;
  for (int i = 0; i < 5; ++i) Z.comp[i] = X.comp[i] - Y.comp[i];
  return Z;
}

namespace {
CanonicalField field_add(const CanonicalField& X, const CanonicalField& Y) {
  CanonicalField Z;
  for (int i = 0; i < 5; ++i) Z.comp[i] = X.comp[i] + Y.comp[i];
  return Z;
}
}  // namespace

std::optional<std::vector<ParamScalar>> in_span(const CanonicalField& X,
                                                const std::vector<CanonicalField>& gens) {
  // stack the five components into one matching problem by tagging each with a
  // distinct marker power of lam (lam never occurs in generator components)
  auto pack = [](const CanonicalField& F) {
    Expr acc;
    for (int i = 0; i < 5; ++i)
      acc += Expr::var_pow(VarId::lam(), ParamScalar(i + 1)) * F.comp[i];
    return acc;
  };
  std::vector<Expr> cols;
  cols.reserve(gens.size());
  for (auto& g : gens) cols.push_back(pack(g));
  return match_linear(cols, pack(X));
}

AlgebraReport verify_algebra(const std::vector<CanonicalField>& gens,
                             const std::vector<BracketClaim>& claims) {
  AlgebraReport rep;
  for (auto& claim : claims) {
    CanonicalField computed = commutator(gens[claim.i], gens[claim.j]);
    CanonicalField expected;
    for (auto& [idx, coeff] : claim.combination)
      expected = field_add(expected, field_scale(gens[idx], coeff));
    CanonicalField diff = field_sub(computed, expected);
    bool matches = diff.is_zero();
    if (!matches) {
      BracketMismatch mm;
      mm.i = claim.i;
      mm.j = claim.j;
      mm.expected = expected.str();
      mm.computed = computed.str();
      mm.was_documented = claim.expect_mismatch;
      rep.mismatches.push_back(mm);
      if (!claim.expect_mismatch) rep.all_claims_match = false;
    } else if (claim.expect_mismatch) {
      rep.anomalies_as_documented = false;  // documented as wrong but verified
    }
  }
  // closure + antisymmetry come with the bracket; check closure and Jacobi on
  // all pairs/triples
  size_t n = gens.size();
  std::vector<std::vector<CanonicalField>> brk(n, std::vector<CanonicalField>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) brk[i][j] = commutator(gens[i], gens[j]);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (!in_span(brk[i][j], gens)) rep.closure_ok = false;
  // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        CanonicalField jac =
            field_add(field_add(commutator(brk[i][j], gens[k]),
                                commutator(brk[j][k], gens[i])),
                      commutator(brk[k][i], gens[j]));
        if (!jac.is_zero()) rep.jacobi_ok = false;
      }
  return rep;
}

}  // namespace symmwave
