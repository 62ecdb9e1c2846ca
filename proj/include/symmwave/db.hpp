#pragma once

#include <string>
#include <vector>

#include "symmwave/lie.hpp"
#include "symmwave/verify.hpp"

namespace symmwave {

struct SymmetryEntry {
  std::string table, id;
  Family family = Family::A;
  Expr tau, xi, eta;
  std::vector<ConditionBranch> branches;
  std::string note;
  std::string full_id() const { return table + "-" + id; }
};

struct ConsVariant {
  ConditionBranch branch;
  Expr Q, T, X;
  std::string note;
};

struct ConsLawEntry {
  std::string table, id;
  Family family = Family::A;
  enum class Kind { kKinematic, kGenergy } kind = Kind::kKinematic;
  std::vector<ConsVariant> variants;
  std::string note;
  std::string full_id() const { return table + "-" + id; }
};

struct AlgebraClause {
  std::string theorem, id;
  Family family = Family::A;
  bool in_lookup = true;  // false for the variational sub-algebra theorems
  std::vector<ConditionBranch> branches;
  std::vector<std::string> gen_names;
  std::vector<CanonicalField> generators;  // before branch substitution
  std::vector<BracketClaim> claims;
  std::string note;
  std::string full_id() const { return theorem + "/" + id; }
};

struct GeneratorEntry {
  std::string table, id;
  Family family = Family::A;
  CanonicalField field;
  bool contact = false;
  ConditionBranch branch;
  std::string conslaw;  // full id of the generating conservation-law row
  ParamScalar weight;   // r^weight of the corresponding multiplier
};

// paper row counts, validated at load
struct ExpectedCounts {
  size_t a_symmetries = 8, b_symmetries = 8;
  size_t a_kinematic = 6, b_kinematic = 4;
  size_t a_genergy = 7, b_genergy = 12;
};

class Database {
 public:
  static Database load(const std::string& dir);
  // structural invariants (counts, point types, kinematic shapes, dT/du_t = Q);
  // throws on violation
  void validate() const;

  std::vector<SymmetryEntry> symmetries;
  std::vector<ConsLawEntry> conslaws;
  std::vector<AlgebraClause> algebra;
  std::vector<GeneratorEntry> generators;

  struct Admitted {
    std::vector<std::pair<const SymmetryEntry*, size_t>> symmetries;   // entry, branch
    std::vector<std::pair<const ConsLawEntry*, size_t>> conslaws;      // entry, variant
  };
  // exactly the entries one of whose branches holds at the point;
  // InadmissibleEquation if the family inequality fails there
  Admitted admitted(Family f, const ParamPoint& pt) const;

  // first clause (file order) whose branch matches; NoMatchingClause otherwise
  const AlgebraClause& lookup_algebra(Family f, const ParamPoint& pt) const;

  const ConsLawEntry& conslaw_by_id(const std::string& full_id) const;
  const SymmetryEntry& symmetry_by_id(const std::string& full_id) const;
};

// resolves the database directory: explicit argument, else SYMMWAVE_DB_DIR,
// else the source-tree db/ directory
std::string resolve_db_dir(const std::string& cli_override = "");

// canonical generator field of a characteristic P (point part always; the
// contact slots delta u_t = P_t + u_t P_u, delta u_r = P_r + u_r P_u when
// as_contact is set)
CanonicalField canonical_field_from_characteristic(const Expr& P, bool as_contact);

}  // namespace symmwave
