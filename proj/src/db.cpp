#include "symmwave/db.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "symmwave/parse.hpp"

namespace symmwave {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

ParamScalar scalar_of(const json& j) { return parse_scalar(j.get<std::string>()); }

ConditionBranch branch_from_json(const json& j, Family fam) {
  ConditionBranch br;
  if (j.contains("assign")) {
    for (auto& pairj : j.at("assign")) {
      std::string name = pairj.at(0).get<std::string>();
      auto v = param_from_name(name);
      if (!v) fail("DbFormat", "unknown parameter '" + name + "' in branch assign");
      br.equalities.push_back({*v, scalar_of(pairj.at(1))});
    }
  }
  if (j.contains("nonzeros"))
    for (auto& nz : j.at("nonzeros")) br.nonzeros.push_back(scalar_of(nz));
  if (j.contains("provenance")) br.provenance = j.at("provenance").get<std::string>();
  // prune-check against the family inequality: a stored branch must be
  // admissible
  ParamScalar adm = admissibility(fam);
  try {
    if (apply_branch(adm, br).is_zero())
      fail("DbFormat", "stored branch is inadmissible: " + br.str());
  } catch (const Error& e) {
    if (e.code() == "DbFormat") throw;
    fail("DbFormat", "stored branch breaks the admissibility product: " + br.str());
  }
  return br;
}

std::vector<ConditionBranch> branches_from_conditions(const json& j, Family fam) {
  std::vector<RawEquality> eqs;
  if (j.contains("equalities")) {
    for (auto& e : j.at("equalities")) {
      RawEquality raw;
      for (auto& fstr : e) raw.factors.push_back(scalar_of(fstr));
      eqs.push_back(std::move(raw));
    }
  }
  std::vector<ParamScalar> nz;
  if (j.contains("nonzeros"))
    for (auto& s : j.at("nonzeros")) nz.push_back(scalar_of(s));
  auto out = branch_normalize(eqs, nz, {admissibility(fam)});
  if (j.contains("provenance"))
    for (auto& br : out) br.provenance = j.at("provenance").get<std::string>();
  return out;
}

std::vector<ConditionBranch> branches_of_row(const json& row, Family fam) {
  std::vector<ConditionBranch> out;
  if (row.contains("branches")) {
    for (auto& bj : row.at("branches")) {
      if (bj.contains("conditions")) {
        auto got = branches_from_conditions(bj.at("conditions"), fam);
        out.insert(out.end(), got.begin(), got.end());
      } else {
        out.push_back(branch_from_json(bj, fam));
      }
    }
  } else if (row.contains("conditions")) {
    out = branches_from_conditions(row.at("conditions"), fam);
  } else {
    out.push_back(ConditionBranch{});
  }
  if (out.empty())
    fail("DbFormat", "row has no admissible branch after normalization");
  return out;
}

CanonicalField field_from_json(const json& comps) {
  CanonicalField f;
  size_t n = comps.size();
  if (n != 3 && n != 5) fail("DbFormat", "generator needs 3 or 5 components");
  for (size_t i = 0; i < n; ++i) f.comp[i] = parse_expr(comps.at(i).get<std::string>());
  return f;
}

void load_symmetry_table(Database& db, const json& j) {
  Family fam = *family_from_name(j.at("family").get<std::string>());
  for (auto& row : j.at("rows")) {
    SymmetryEntry e;
    e.table = j.at("table").get<std::string>();
    e.family = fam;
    e.id = row.at("id").is_string() ? row.at("id").get<std::string>()
                                    : std::to_string(row.at("id").get<int>());
    e.tau = parse_expr(row.at("tau").get<std::string>());
    e.xi = parse_expr(row.at("xi").get<std::string>());
    e.eta = parse_expr(row.at("eta").get<std::string>());
    e.branches = branches_of_row(row, fam);
    if (row.contains("note")) e.note = row.at("note").get<std::string>();
    db.symmetries.push_back(std::move(e));
  }
}

void load_conslaw_table(Database& db, const json& j, ConsLawEntry::Kind kind) {
  Family fam = *family_from_name(j.at("family").get<std::string>());
  for (auto& row : j.at("rows")) {
    ConsLawEntry e;
    e.table = j.at("table").get<std::string>();
    e.family = fam;
    e.kind = kind;
    e.id = row.at("id").is_string() ? row.at("id").get<std::string>()
                                    : std::to_string(row.at("id").get<int>());
    if (row.contains("note")) e.note = row.at("note").get<std::string>();
    for (auto& vj : row.at("variants")) {
      ConsVariant v;
      v.branch = branch_from_json(vj.at("branch"), fam);
      v.Q = parse_expr(vj.at("Q").get<std::string>());
      v.T = parse_expr(vj.at("T").get<std::string>());
      v.X = parse_expr(vj.at("X").get<std::string>());
      if (vj.contains("note")) v.note = vj.at("note").get<std::string>();
      e.variants.push_back(std::move(v));
    }
    if (e.variants.empty()) fail("DbFormat", "conservation row without variants");
    db.conslaws.push_back(std::move(e));
  }
}

void load_algebra_table(Database& db, const json& j) {
  Family fam = *family_from_name(j.at("family").get<std::string>());
  bool in_lookup = !j.contains("lookup") || j.at("lookup").get<bool>();
  for (auto& cj : j.at("clauses")) {
    AlgebraClause cl;
    cl.theorem = j.at("theorem").get<std::string>();
    cl.family = fam;
    cl.in_lookup = in_lookup;
    cl.id = cj.at("id").get<std::string>();
    for (auto& bj : cj.at("branches")) {
      if (bj.contains("conditions")) {
        auto got = branches_from_conditions(bj.at("conditions"), fam);
        cl.branches.insert(cl.branches.end(), got.begin(), got.end());
      } else {
        cl.branches.push_back(branch_from_json(bj, fam));
      }
    }
    for (auto& [name, comps] : cj.at("generators").items()) {
      cl.gen_names.push_back(name);
      cl.generators.push_back(field_from_json(comps));
    }
    auto index_of = [&](const std::string& name) -> size_t {
      for (size_t i = 0; i < cl.gen_names.size(); ++i)
        if (cl.gen_names[i] == name) return i;
      fail("DbFormat", "bracket references unknown generator " + name);
    };
    if (cj.contains("brackets")) {
      for (auto& bj : cj.at("brackets")) {
        BracketClaim claim;
        claim.i = index_of(bj.at("lhs").at(0).get<std::string>());
        claim.j = index_of(bj.at("lhs").at(1).get<std::string>());
        for (auto& [name, coeff] : bj.at("rhs").items())
          claim.combination[index_of(name)] = scalar_of(coeff);
        if (bj.contains("expect_mismatch")) claim.expect_mismatch = bj.at("expect_mismatch");
        if (bj.contains("note")) claim.note = bj.at("note").get<std::string>();
        cl.claims.push_back(std::move(claim));
      }
    }
    if (cj.contains("note")) cl.note = cj.at("note").get<std::string>();
    db.algebra.push_back(std::move(cl));
  }
}

void load_generator_table(Database& db, const json& j) {
  Family fam = *family_from_name(j.at("family").get<std::string>());
  for (auto& row : j.at("rows")) {
    GeneratorEntry g;
    g.table = j.at("table").get<std::string>();
    g.family = fam;
    g.id = row.at("id").get<std::string>();
    g.field = field_from_json(row.at("field"));
    g.contact = row.at("field").size() == 5;
    g.branch = branch_from_json(row.at("branch"), fam);
    g.conslaw = row.at("conslaw").get<std::string>();
    g.weight = scalar_of(row.at("weight"));
    db.generators.push_back(std::move(g));
  }
}

}  // namespace

Database Database::load(const std::string& dir) {
  Database db;
  if (!fs::is_directory(dir)) fail("DbFormat", "database directory not found: " + dir);
  std::vector<fs::path> files;
  for (auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (auto& path : files) {
    std::ifstream in(path);
    json j;
    try {
      in >> j;
    } catch (const std::exception& ex) {
      fail("DbFormat", path.string() + ": " + ex.what());
    }
    std::string kind = j.at("kind").get<std::string>();
    try {
      if (kind == "symmetry")
        load_symmetry_table(db, j);
      else if (kind == "kinematic")
        load_conslaw_table(db, j, ConsLawEntry::Kind::kKinematic);
      else if (kind == "genergy")
        load_conslaw_table(db, j, ConsLawEntry::Kind::kGenergy);
      else if (kind == "algebra")
        load_algebra_table(db, j);
      else if (kind == "generators")
        load_generator_table(db, j);
      else
        fail("DbFormat", "unknown table kind " + kind);
    } catch (const Error& e) {
      fail("DbFormat", path.filename().string() + ": " + e.what());
    }
  }
  db.validate();
  return db;
}

void Database::validate() const {
  ExpectedCounts want;
  auto count = [&](auto& entries, Family f, auto pred) {
    size_t n = 0;
    for (auto& e : entries)
      if (e.family == f && pred(e)) ++n;
    return n;
  };
  auto any = [](auto&) { return true; };
  auto kin = [](const ConsLawEntry& e) { return e.kind == ConsLawEntry::Kind::kKinematic; };
  auto gen = [](const ConsLawEntry& e) { return e.kind == ConsLawEntry::Kind::kGenergy; };
  auto expect = [](size_t got, size_t wanted, const char* what) {
    if (got != wanted)
      fail("DbFormat", std::string("completeness: ") + what + ": have " +
                           std::to_string(got) + ", expect " + std::to_string(wanted));
  };
  expect(count(symmetries, Family::A, any), want.a_symmetries, "family A symmetries");
  expect(count(symmetries, Family::B, any), want.b_symmetries, "family B symmetries");
  expect(count(conslaws, Family::A, kin), want.a_kinematic, "family A kinematic rows");
  expect(count(conslaws, Family::B, kin), want.b_kinematic, "family B kinematic rows");
  expect(count(conslaws, Family::A, gen), want.a_genergy, "family A generalized-energy rows");
  expect(count(conslaws, Family::B, gen), want.b_genergy, "family B generalized-energy rows");

  for (auto& s : symmetries) {
    for (auto& comp : {s.tau, s.xi, s.eta})
      if (comp.jet_order() > 0)
        fail("DbFormat",
             s.full_id() + ": point symmetry components must depend on (t, r, u) only");
  }
  for (auto& e : conslaws) {
    for (size_t vi = 0; vi < e.variants.size(); ++vi) {
      const ConsVariant& v = e.variants[vi];
      std::string where = e.full_id() + "[" + std::to_string(vi) + "]";
      Expr Q = apply_branch(v.Q, v.branch);
      Expr T = apply_branch(v.T, v.branch);
      if (!(T.partial(VarId::ut()) - Q).is_zero())
        fail("DbFormat", where + ": dT/du_t != Q");
      if (e.kind == ConsLawEntry::Kind::kKinematic) {
        if (Q.jet_order() > 0)
          fail("DbFormat", where + ": kinematic multiplier must depend on (t, r) only");
        // T = u_t alpha(t,r) - u d alpha/dt
        Expr alpha = Q;
        Expr expectT = Expr::var(VarId::ut()) * alpha -
                       Expr::var(VarId::u()) * alpha.partial(VarId::t());
        if (!(T - expectT).is_zero())
          fail("DbFormat", where + ": kinematic density is not u_t a - u a_t");
      } else {
        // at most linear in u_t
        if (!Q.partial(VarId::ut()).partial(VarId::ut()).is_zero())
          fail("DbFormat", where + ": generalized-energy multiplier not linear in u_t");
      }
    }
  }
}

Database::Admitted Database::admitted(Family f, const ParamPoint& pt) const {
  auto adm = admissibility(f).eval(pt);
  if (!adm || *adm == 0)
    fail("InadmissibleEquation", "point " + point_str(pt) + " is inadmissible for family " +
                                     family_name(f));
  Admitted out;
  for (auto& s : symmetries) {
    if (s.family != f) continue;
    for (size_t bi = 0; bi < s.branches.size(); ++bi)
      if (eval_conditions(s.branches[bi], pt)) {
        out.symmetries.push_back({&s, bi});
        break;
      }
  }
  for (auto& e : conslaws) {
    if (e.family != f) continue;
    for (size_t vi = 0; vi < e.variants.size(); ++vi)
      if (eval_conditions(e.variants[vi].branch, pt)) {
        out.conslaws.push_back({&e, vi});
        break;
      }
  }
  return out;
}

const AlgebraClause& Database::lookup_algebra(Family f, const ParamPoint& pt) const {
  auto adm = admissibility(f).eval(pt);
  if (!adm || *adm == 0)
    fail("InadmissibleEquation", "point " + point_str(pt) + " is inadmissible for family " +
                                     family_name(f));
  for (auto& cl : algebra) {
    if (cl.family != f || !cl.in_lookup) continue;
    for (auto& br : cl.branches)
      if (eval_conditions(br, pt)) return cl;
  }
  fail("NoMatchingClause", "no commutator clause covers " + point_str(pt));
}

const ConsLawEntry& Database::conslaw_by_id(const std::string& full_id) const {
  for (auto& e : conslaws)
    if (e.full_id() == full_id) return e;
  fail("DbFormat", "no conservation-law entry " + full_id);
}

const SymmetryEntry& Database::symmetry_by_id(const std::string& full_id) const {
  for (auto& e : symmetries)
    if (e.full_id() == full_id) return e;
  fail("DbFormat", "no symmetry entry " + full_id);
}

std::string resolve_db_dir(const std::string& cli_override) {
  if (!cli_override.empty()) return cli_override;
  if (const char* env = std::getenv("SYMMWAVE_DB_DIR")) return env;
  return std::string(SYMMWAVE_SOURCE_DIR) + "/db";
}

CanonicalField canonical_field_from_characteristic(const Expr& P, bool as_contact) {
  CanonicalField f;
  Expr Put = P.partial(VarId::ut()), Pur = P.partial(VarId::ur());
  f.comp[0] = -Put;
  f.comp[1] = -Pur;
  f.comp[2] = P - Expr::var(VarId::ut()) * Put - Expr::var(VarId::ur()) * Pur;
  if (as_contact) {
    f.comp[3] = P.partial(VarId::t()) + Expr::var(VarId::ut()) * P.partial(VarId::u());
    f.comp[4] = P.partial(VarId::r()) + Expr::var(VarId::ur()) * P.partial(VarId::u());
  }
  return f;
}

}  // namespace symmwave
