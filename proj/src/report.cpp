#include "symmwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symmwave/parse.hpp"

namespace symmwave {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// fixed generic jet point for numeric residual evaluation
std::map<uint32_t, double> fixed_jet_point() {
  std::map<uint32_t, double> m;
  m[VarId::t().sort_key()] = 0.7;
  m[VarId::r().sort_key()] = 1.9;
  double base = 1.3;
  for (int to = 0; to <= 1; ++to)
    for (int ro = 0; ro <= kMaxROrder; ++ro) {
      m[VarId::jet(to, ro).sort_key()] = base;
      base = base * 0.83 + 0.11;
    }
  return m;
}

ParamPoint random_point(Rng& rng) {
  ParamPoint pt;
  for (int i = 0; i < kNumParams; ++i) pt[i] = rng.rat(3, 2);
  return pt;
}

bool on_any_branch(const std::vector<ConditionBranch>& branches, const ParamPoint& pt) {
  for (auto& br : branches)
    if (eval_conditions(br, pt)) return true;
  return false;
}

// substitute the full numeric point into an expression
Expr at_point(const Expr& e, const ParamPoint& pt) {
  return apply_branch(e, point_branch(pt));
}

}  // namespace

Json verify_symmetries(const Database& db, const std::string& table, uint64_t seed,
                       int off_branch_samples) {
  Json rows = Json::array();
  bool all_ok = true;
  for (auto& s : db.symmetries) {
    if (s.table != table) continue;
    Json row;
    row["entry"] = s.full_id();
    Json branch_results = Json::array();
    bool entry_ok = true;
    for (auto& br : s.branches) {
      WaveEq eq = make_wave_eq(s.family, br);
      Expr res = symmetry_residual(apply_branch(s.tau, br), apply_branch(s.xi, br),
                                   apply_branch(s.eta, br), eq);
      bool zero = res.is_zero();
      entry_ok = entry_ok && zero;
      Json bj;
      bj["branch"] = br.str();
      bj["residual_zero"] = zero;
      if (!zero) bj["residual"] = res.str();
      branch_results.push_back(bj);
    }
    row["branches"] = branch_results;

    bool has_conditions = false;
    for (auto& br : s.branches)
      if (!br.equalities.empty() || !br.nonzeros.empty()) has_conditions = true;
    bool unconditional = !has_conditions || s.branches.empty();
    // rows admitted at every admissible point have no off-branch points
    if (unconditional || off_branch_samples <= 0) {
      row["off_branch"] = "n/a";
    } else {
      Rng rng(seed ^ fnv1a(s.full_id()));
      auto jets = fixed_jet_point();
      int found = 0, nonzero = 0;
      int guard = 0;
      while (found < off_branch_samples && guard++ < 10000) {
        ParamPoint pt = random_point(rng);
        auto adm = admissibility(s.family).eval(pt);
        if (!adm || *adm == 0) continue;
        if (on_any_branch(s.branches, pt)) continue;
        WaveEq eq = make_wave_eq(s.family, pt);
        Expr res;
        try {
          res = symmetry_residual(at_point(s.tau, pt), at_point(s.xi, pt),
                                  at_point(s.eta, pt), eq);
        } catch (const Error&) {
          continue;  // a denominator of the row died at this point; resample
        }
        ++found;
        double v = res.eval_double(pt, jets);
        if (std::abs(v) > 1e-6) ++nonzero;
      }
      row["off_branch_points"] = found;
      row["off_branch_nonzero"] = nonzero;
      entry_ok = entry_ok && (found == off_branch_samples) && (nonzero == found);
    }
    row["ok"] = entry_ok;
    all_ok = all_ok && entry_ok;
    rows.push_back(row);
  }
  Json out;
  out["check"] = "symmetry-table";
  out["table"] = table;
  out["rows"] = rows;
  out["ok"] = all_ok;
  return out;
}

Json verify_conslaws(const Database& db, const std::string& table) {
  Json rows = Json::array();
  bool all_ok = true;
  for (auto& e : db.conslaws) {
    if (e.table != table) continue;
    Json row;
    row["entry"] = e.full_id();
    Json variants = Json::array();
    bool entry_ok = true;
    for (auto& v : e.variants) {
      WaveEq eq = make_wave_eq(e.family, v.branch);
      Expr Q = apply_branch(v.Q, v.branch);
      Expr T = apply_branch(v.T, v.branch);
      Expr X = apply_branch(v.X, v.branch);
      Expr cres = conslaw_residual(T, X, eq);
      auto [m1, m2] = multiplier_residual(Q, eq);
      OffShell chres = characteristic_residual(T, X, Q, eq);
      bool dtq = (T.partial(VarId::ut()) - Q).is_zero();
      Json vj;
      vj["branch"] = v.branch.str();
      vj["conslaw_residual_zero"] = cres.is_zero();
      vj["multiplier_residual_zero"] = m1.is_zero() && m2.is_zero();
      vj["characteristic_identity_zero"] = chres.is_zero();
      vj["dT_dut_equals_Q"] = dtq;
      bool ok =
          cres.is_zero() && m1.is_zero() && m2.is_zero() && chres.is_zero() && dtq;
      if (!cres.is_zero()) vj["conslaw_residual"] = cres.str();
      if (!m1.is_zero()) vj["adjoint_residual"] = m1.str();
      if (!m2.is_zero()) vj["helmholtz_residual"] = m2.str();
      vj["ok"] = ok;
      entry_ok = entry_ok && ok;
      variants.push_back(vj);
    }
    row["variants"] = variants;
    row["ok"] = entry_ok;
    all_ok = all_ok && entry_ok;
    rows.push_back(row);
  }
  Json out;
  out["check"] = "conservation-table";
  out["table"] = table;
  out["rows"] = rows;
  out["ok"] = all_ok;
  return out;
}

Json verify_algebras(const Database& db) {
  Json clauses = Json::array();
  bool all_ok = true;
  for (auto& cl : db.algebra) {
    for (size_t bi = 0; bi < cl.branches.size(); ++bi) {
      const ConditionBranch& br = cl.branches[bi];
      std::vector<CanonicalField> gens;
      for (auto& g : cl.generators) {
        CanonicalField f;
        for (int i = 0; i < 5; ++i) f.comp[i] = apply_branch(g.comp[i], br);
        gens.push_back(f);
      }
      std::vector<BracketClaim> claims = cl.claims;
      for (auto& claim : claims)
        for (auto& [idx, coeff] : claim.combination) coeff = apply_branch(coeff, br);
      AlgebraReport rep = verify_algebra(gens, claims);
      Json cj;
      cj["clause"] = cl.full_id();
      cj["branch"] = br.str();
      cj["claims_match"] = rep.all_claims_match;
      cj["closure"] = rep.closure_ok;
      cj["jacobi"] = rep.jacobi_ok;
      cj["anomalies_as_documented"] = rep.anomalies_as_documented;
      if (!rep.mismatches.empty()) {
        Json ms = Json::array();
        for (auto& mm : rep.mismatches) {
          Json mj;
          mj["bracket"] = "[" + cl.gen_names[mm.i] + "," + cl.gen_names[mm.j] + "]";
          mj["expected"] = mm.expected;
          mj["computed"] = mm.computed;
          mj["documented_anomaly"] = mm.was_documented;
          ms.push_back(mj);
        }
        cj["mismatches"] = ms;
      }
      cj["ok"] = rep.ok();
      all_ok = all_ok && rep.ok();
      clauses.push_back(cj);
    }
  }
  Json out;
  out["check"] = "commutator-algebras";
  out["clauses"] = clauses;
  out["ok"] = all_ok;
  return out;
}

Json verify_generator_tables(const Database& db) {
  Json rows = Json::array();
  bool all_ok = true;
  for (auto& g : db.generators) {
    const ConsLawEntry& entry = db.conslaw_by_id(g.conslaw);
    // pick the variant whose branch matches the generator row's branch
    const ConsVariant* variant = nullptr;
    for (auto& v : entry.variants)
      if (v.branch.str() == g.branch.str()) variant = &v;
    if (!variant) variant = &entry.variants.front();
    Expr Q = apply_branch(variant->Q, g.branch);
    Expr P = Expr::var_pow(VarId::r(), -apply_branch(g.weight, g.branch)) * Q;
    CanonicalField expect = canonical_field_from_characteristic(P, g.contact);
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      Expr stored = apply_branch(g.field.comp[i], g.branch);
      if (!(stored - expect.comp[i]).is_zero()) ok = false;
    }
    Json row;
    row["entry"] = g.table + "-" + g.id;
    row["conslaw"] = g.conslaw;
    row["matches_characteristic_form"] = ok;
    row["ok"] = ok;
    all_ok = all_ok && ok;
    rows.push_back(row);
  }
  Json out;
  out["check"] = "generator-tables";
  out["rows"] = rows;
  out["ok"] = all_ok;
  return out;
}

Json reconstruct_entry(const Database& db, const ConsLawEntry& entry, size_t vi) {
  (void)db;
  const ConsVariant& v = entry.variants.at(vi);
  WaveEq eq = make_wave_eq(entry.family, v.branch);
  Expr Q = apply_branch(v.Q, v.branch);
  Expr T_db = apply_branch(v.T, v.branch);
  Expr X_db = apply_branch(v.X, v.branch);

  Json out;
  out["entry"] = entry.full_id();
  out["variant"] = static_cast<int>(vi);
  out["branch"] = v.branch.str();

  HomotopyResult hr;
  std::string route = "homotopy";
  bool have = false;
  try {
    hr = homotopy_TX(Q, eq);
    std::string why;
    if (tx_relations_hold(Q, hr.T, hr.X, eq, &why)) {
      have = true;
    } else {
      out["homotopy_rejected"] = why;
    }
  } catch (const Error& err) {
    if (err.code() != "NonIntegrableAtZero") throw;
    out["homotopy_rejected"] = err.what();
  }
  if (!have) {
    hr = reconstruct_direct(Q, eq);
    route = "direct";
  }
  out["route"] = route;
  Json caveats = Json::array();
  for (auto& cv : hr.caveats) caveats.push_back(cv);
  out["caveats"] = caveats;
  std::string why;
  bool relations = tx_relations_hold(Q, hr.T, hr.X, eq, &why);
  out["relations_hold"] = relations;
  bool conserved = conslaw_residual(hr.T, hr.X, eq).is_zero();
  out["conserved"] = conserved;
  EquivalenceResult equiv = conslaw_equivalent(T_db, X_db, hr.T, hr.X, false);
  out["equivalent_to_stored"] = equiv.equivalent;
  if (equiv.equivalent) out["theta"] = equiv.theta.str();
  out["ok"] = relations && conserved && equiv.equivalent;
  return out;
}

Json reconstruct_table(const Database& db, const std::string& table) {
  Json rows = Json::array();
  bool all_ok = true;
  for (auto& e : db.conslaws) {
    if (e.table != table) continue;
    for (size_t vi = 0; vi < e.variants.size(); ++vi) {
      Json r = reconstruct_entry(db, e, vi);
      all_ok = all_ok && r["ok"].get<bool>();
      rows.push_back(r);
    }
  }
  Json out;
  out["check"] = "reconstruction";
  out["table"] = table;
  out["rows"] = rows;
  out["ok"] = all_ok;
  return out;
}

namespace {

// variational data of a branch, when the equation is variational there
struct VariationalData {
  bool variational = false;
  Expr L;
  ParamScalar weight;
};

VariationalData variational_on_branch(Family fam, const ConditionBranch& br) {
  VariationalData out;
  auto zero_on = [&](const char* t) { return apply_branch(parse_scalar(t), br).is_zero(); };
  if (fam == Family::A) {
    if (!zero_on("2*a - p*b")) return out;
    out.variational = true;
    out.L = apply_branch(parse_expr("(1/2)*(-u_t^2 + (c + b*u^p)*u_r^2)"), br);
    out.weight = apply_branch(parse_scalar("n - 1"), br);
    return out;
  }
  if (zero_on("c")) {
    // alternative structure with weight m
    out.variational = true;
    Expr intF;
    if (zero_on("p+1"))
      intF = apply_branch(parse_expr("(a+b)*(u_r*ln(u_r) - u_r) + b*(n-1)*u_r*ln(r)"), br);
    else if (zero_on("p+2"))
      intF = apply_branch(parse_expr("-(a+b)*ln(u_r)"), br);
    else
      intF = apply_branch(parse_expr("((a+b)/((p+1)*(p+2)))*u_r^(p+2)"), br);
    out.L = apply_branch(parse_expr("-(1/2)*u_t^2"), br) + intF;
    out.weight = apply_branch(radial_weight_m(), br);
    return out;
  }
  if (zero_on("a - p*b")) {
    out.variational = true;
    Expr bh;
    if (zero_on("p+2"))
      bh = apply_branch(parse_expr("b*ln(u_r)"), br);
    else
      bh = apply_branch(parse_expr("(b/(p+2))*u_r^(p+2)"), br);
    out.L = apply_branch(parse_expr("(1/2)*(-u_t^2 + c*u_r^2)"), br) + bh;
    out.weight = apply_branch(parse_scalar("n - 1"), br);
  }
  return out;
}

}  // namespace

Json noether_roundtrips(const Database& db) {
  Json rows = Json::array();
  bool all_ok = true;
  for (auto& e : db.conslaws) {
    if (e.kind != ConsLawEntry::Kind::kGenergy) continue;
    for (size_t vi = 0; vi < e.variants.size(); ++vi) {
      const ConsVariant& v = e.variants[vi];
      VariationalData vd = variational_on_branch(e.family, v.branch);
      if (!vd.variational) continue;
      Json row;
      row["entry"] = e.full_id();
      row["variant"] = static_cast<int>(vi);
      row["weight"] = vd.weight.str();
      WaveEq eq = make_wave_eq(e.family, v.branch);
      Expr Q = apply_branch(v.Q, v.branch);
      Expr P = Expr::var_pow(VarId::r(), -vd.weight) * Q;
      bool ok = false;
      try {
        NoetherResult nres = noether_check(P, vd.L, vd.weight, eq);
        EquivalenceResult equiv = conslaw_equivalent(
            apply_branch(v.T, v.branch), apply_branch(v.X, v.branch), nres.T, nres.X, false);
        row["invariant"] = true;
        row["equivalent_to_stored"] = equiv.equivalent;
        ok = equiv.equivalent;
      } catch (const Error& err) {
        row["invariant"] = false;
        row["error"] = err.what();
      }
      row["ok"] = ok;
      all_ok = all_ok && ok;
      rows.push_back(row);
    }
  }
  Json out;
  out["check"] = "noether-roundtrips";
  out["rows"] = rows;
  out["ok"] = all_ok;
  return out;
}

namespace {

struct MorawetzTarget {
  std::string entry;
  size_t variant;
  int identity;          // 1, 2, 3
  const char* P;         // characteristic (in the shifted variable for p1 case)
  bool shift_u = false;  // map u -> u + c/b before comparing (family A, p=1, c!=0)
};

}  // namespace

Json morawetz_suite(const Database& db) {
  Json out;
  out["check"] = "morawetz";
  Json identities = Json::array();
  bool all_ok = true;

  auto identity_case = [&](const char* label, Family fam, const ConditionBranch& br,
                           int which) {
    Json j;
    j["identity"] = label;
    j["branch"] = br.str();
    try {
      WaveEq eq = make_wave_eq(fam, br);
      MorawetzSetup setup = which == 1   ? make_morawetz_A(eq)
                            : which == 2 ? make_morawetz_B1(eq)
                                         : make_morawetz_B2(eq);
      OffShell res = morawetz_identity_residual(setup, eq);
      j["lambda"] = setup.lambda.str();
      j["residual_zero"] = res.is_zero();
      if (!res.is_zero()) j["residual"] = res.str();
      j["ok"] = res.is_zero();
    } catch (const Error& err) {
      j["error"] = err.what();
      j["ok"] = false;
    }
    all_ok = all_ok && j["ok"].get<bool>();
    identities.push_back(j);
  };

  // identity 1, generic symbolic branch (c = 0) and the c != 0 (n = 2) case
  {
    ConditionBranch br;
    br.equalities = {{Param::C, ParamScalar(0)}, {Param::A, parse_scalar("p*b/3")}};
    br.nonzeros = {parse_scalar("p+3")};
    identity_case("family-A dilation identity, c=0, symbolic p and n", Family::A, br, 1);
    ConditionBranch br2;
    br2.equalities = {{Param::N, ParamScalar(2)}, {Param::A, parse_scalar("p*b/3")}};
    br2.nonzeros = {parse_scalar("c")};
    identity_case("family-A dilation identity, c!=0, n=2, lambda=0", Family::A, br2, 1);
  }
  // identity 2: generic p, p=-2 and p=-3 branches, all symbolic in n
  {
    ConditionBranch br;
    br.equalities = {{Param::C, ParamScalar(0)}};
    br.nonzeros = {parse_scalar("p+1"), parse_scalar("p+2"), parse_scalar("p+3")};
    identity_case("family-B dilation identity, c=0, symbolic p and n", Family::B, br, 2);
    ConditionBranch brm2;
    brm2.equalities = {{Param::C, ParamScalar(0)}, {Param::P, ParamScalar(-2)}};
    identity_case("family-B dilation identity, p=-2 (log form)", Family::B, brm2, 2);
    ConditionBranch brm3;
    brm3.equalities = {{Param::C, ParamScalar(0)}, {Param::P, ParamScalar(-3)}};
    identity_case("family-B dilation identity, p=-3 (log antiderivative)", Family::B, brm3,
                  2);
  }
  // identity 3: c=0, p=-2
  {
    ConditionBranch br;
    br.equalities = {{Param::C, ParamScalar(0)}, {Param::P, ParamScalar(-2)}};
    identity_case("family-B translation identity, c=0, p=-2", Family::B, br, 3);
  }
  out["identities"] = identities;

  // conservation-law reproduction through the identities
  const std::vector<MorawetzTarget> targets = {
      {"A-genergy-6", 0, 1, "u_t", false},
      {"A-genergy-6", 1, 1, "u_t", true},
      {"A-genergy-7", 0, 1, "t*u_t - u", false},
      {"B-genergy-7", 0, 3, "1", false},
      {"B-genergy-10", 0, 3, "u_t", false},
      {"B-genergy-11", 0, 2, "u_t", false},
      {"B-genergy-12", 0, 2, "t*u_t - u", false},
  };
  Json reproductions = Json::array();
  for (auto& tgt : targets) {
    Json j;
    j["entry"] = tgt.entry;
    j["variant"] = static_cast<int>(tgt.variant);
    j["P"] = tgt.P;
    try {
      const ConsLawEntry& entry = db.conslaw_by_id(tgt.entry);
      const ConsVariant& v = entry.variants.at(tgt.variant);
      ConditionBranch br = v.branch;
      if (tgt.shift_u) {
        // the c != 0, p = 1 case maps onto c = 0 by the shift u -> u + c/b
        br.equalities.insert(br.equalities.begin(), {Param::C, ParamScalar(0)});
      }
      WaveEq eq = make_wave_eq(entry.family, br);
      MorawetzSetup setup = tgt.identity == 1   ? make_morawetz_A(eq)
                            : tgt.identity == 2 ? make_morawetz_B1(eq)
                                                : make_morawetz_B2(eq);
      ReconstructedLaw law = morawetz_conslaw(setup, parse_expr(tgt.P), eq);
      Expr T = law.T, X = law.X, Q = law.Q;
      if (tgt.shift_u) {
        ParamScalar nu = apply_branch(parse_scalar("c/b"), v.branch);
        T = apply_branch(T.shift_u(nu), v.branch);
        X = apply_branch(X.shift_u(nu), v.branch);
        Q = apply_branch(Q.shift_u(nu), v.branch);
      }
      EquivalenceResult equiv = conslaw_equivalent(apply_branch(v.T, v.branch),
                                                   apply_branch(v.X, v.branch), T, X, true);
      bool qmatch = false;
      if (equiv.equivalent) {
        Expr qdiff = apply_branch(v.Q, v.branch) - Q.scale(equiv.scale);
        qmatch = qdiff.is_zero();
        j["scale"] = equiv.scale.str();
      }
      j["equivalent_to_stored"] = equiv.equivalent;
      j["multiplier_matches"] = qmatch;
      j["ok"] = equiv.equivalent && qmatch;
    } catch (const Error& err) {
      j["error"] = err.what();
      j["ok"] = false;
    }
    all_ok = all_ok && j["ok"].get<bool>();
    reproductions.push_back(j);
  }
  out["reproductions"] = reproductions;
  out["ok"] = all_ok;
  return out;
}

Json classify_point(const Database& db, Family f, const ParamPoint& pt) {
  Json out;
  out["command"] = "classify";
  out["family"] = family_name(f);
  Json pj;
  for (int i = 0; i < kNumParams; ++i) pj[param_name(static_cast<Param>(i))] = rat_str(pt[i]);
  out["point"] = pj;
  Database::Admitted adm = db.admitted(f, pt);
  Json symms = Json::array();
  for (auto& [entry, bi] : adm.symmetries) {
    Json sj;
    sj["entry"] = entry->full_id();
    sj["branch"] = entry->branches[bi].str();
    symms.push_back(sj);
  }
  out["symmetries"] = symms;
  Json laws = Json::array();
  for (auto& [entry, vi] : adm.conslaws) {
    Json cj;
    cj["entry"] = entry->full_id();
    cj["kind"] = entry->kind == ConsLawEntry::Kind::kKinematic ? "kinematic"
                                                               : "generalized-energy";
    cj["branch"] = entry->variants[vi].branch.str();
    laws.push_back(cj);
  }
  out["conservation_laws"] = laws;
  StructureReport sr = detect_structures(f, pt);
  Json st;
  st["hyperbolic"] = sr.hyperbolic;
  st["linearity"] = sr.linearity == StructureReport::Linearity::kQuasilinear
                        ? "quasilinear"
                        : "semilinear";
  st["variational"] = sr.variational;
  st["divergence"] = sr.divergence;
  if (sr.lagrangian) st["lagrangian"] = sr.lagrangian->str();
  if (sr.lagrangian_weight) st["lagrangian_weight"] = sr.lagrangian_weight->str();
  if (sr.flux) st["flux"] = sr.flux->str();
  if (sr.flux_weight) st["flux_weight"] = sr.flux_weight->str();
  if (sr.m) st["m"] = sr.m->str();
  st["alternative_structure"] = sr.alternative_structure;
  st["structures_coincide"] = sr.structures_coincide;
  out["structure"] = st;
  try {
    const AlgebraClause& cl = db.lookup_algebra(f, pt);
    out["algebra_clause"] = cl.full_id();
  } catch (const Error& e) {
    out["algebra_clause"] = nullptr;
    out["algebra_note"] = e.what();
  }
  return out;
}

Json verify_all(const Database& db, uint64_t seed) {
  Json out;
  out["command"] = "verify";
  out["selector"] = "--all";
  out["seed"] = seed;
  Json checks = Json::array();
  checks.push_back(verify_symmetries(db, "A-symmetries", seed, 20));
  checks.push_back(verify_symmetries(db, "B-symmetries", seed, 20));
  for (const char* t : {"A-kinematic", "B-kinematic", "A-genergy", "B-genergy"})
    checks.push_back(verify_conslaws(db, t));
  checks.push_back(verify_algebras(db));
  checks.push_back(verify_generator_tables(db));
  checks.push_back(reconstruct_table(db, "A-genergy"));
  checks.push_back(reconstruct_table(db, "B-genergy"));
  checks.push_back(noether_roundtrips(db));
  checks.push_back(morawetz_suite(db));
  bool ok = true;
  int pass = 0, fail_count = 0;
  for (auto& c : checks) {
    bool c_ok = c["ok"].get<bool>();
    ok = ok && c_ok;
    (c_ok ? pass : fail_count) += 1;
  }
  out["checks"] = checks;
  Json summary;
  summary["pass"] = pass;
  summary["fail"] = fail_count;
  out["summary"] = summary;
  out["ok"] = ok;
  return out;
}

bool report_ok(const Json& report) {
  return report.contains("ok") && report["ok"].is_boolean() && report["ok"].get<bool>();
}

// ---- numeric presets --------------------------------------------------------

namespace {

double smooth_bump(double r, double center, double width) {
  double s = (r - center) / width;
  if (std::abs(s) >= 1) return 0;
  return std::exp(-1.0 / (1 - s * s)) * std::exp(1.0);  // normalized to 1 at center
}

double smoother_step(double x) {
  // C^2 transition from 1 (x<=0) to 0 (x>=1)
  if (x <= 0) return 1;
  if (x >= 1) return 0;
  double y = 1 - x;
  (void)y;
  double s = x * x * x * (10 - 15 * x + 6 * x * x);
  return 1 - s;
}

struct PresetConfig {
  std::string name;
  Family family = Family::A;
  ParamPoint params;
  Grid grid;
  std::string data_kind;  // bump | static-B | step-plateau | manufactured
  double center = 5, width = 1.2, amp = 0.4, vamp = 0.0;
  double ped_coef = 0;       // static-B pedestal strength
  double plateau = 0;        // step-plateau inner value
  double step_at = 0, step_width = 1;
  std::vector<std::pair<std::string, int>> monitor;  // entry id, variant
  bool kinematic_fit = false;
  double kinematic_weight = 0;
  bool forcing = false;
};

PresetConfig load_preset(const std::string& name) {
  std::string dir = std::string(SYMMWAVE_SOURCE_DIR) + "/presets";
  if (const char* env = std::getenv("SYMMWAVE_PRESET_DIR")) dir = env;
  std::ifstream in(dir + "/" + name + ".json");
  if (!in) fail("ConfigError", "no preset named " + name + " under " + dir);
  Json j;
  in >> j;
  PresetConfig c;
  c.name = name;
  c.family = *family_from_name(j.at("family").get<std::string>());
  for (int i = 0; i < kNumParams; ++i)
    c.params[i] = parse_rat(j.at("params").at(param_name(static_cast<Param>(i))));
  auto& g = j.at("grid");
  c.grid.r0 = g.at("r0");
  c.grid.R = g.at("R");
  c.grid.nr = g.at("nr");
  c.grid.t_end = g.at("t_end");
  if (g.contains("cfl")) c.grid.cfl = g.at("cfl");
  if (g.contains("save_every")) c.grid.save_every = g.at("save_every");
  auto& d = j.at("data");
  c.data_kind = d.at("kind").get<std::string>();
  if (d.contains("center")) c.center = d.at("center");
  if (d.contains("width")) c.width = d.at("width");
  if (d.contains("amp")) c.amp = d.at("amp");
  if (d.contains("vamp")) c.vamp = d.at("vamp");
  if (d.contains("ped_coef")) c.ped_coef = d.at("ped_coef");
  if (d.contains("plateau")) c.plateau = d.at("plateau");
  if (d.contains("step_at")) c.step_at = d.at("step_at");
  if (d.contains("step_width")) c.step_width = d.at("step_width");
  if (j.contains("monitor"))
    for (auto& mj : j.at("monitor"))
      c.monitor.push_back({mj.at("entry").get<std::string>(), mj.value("variant", 0)});
  if (j.contains("kinematic_fit")) {
    c.kinematic_fit = true;
    c.kinematic_weight = j.at("kinematic_fit").at("weight");
  }
  if (j.contains("forcing_check")) c.forcing = j.at("forcing_check");
  return c;
}

struct DataFns {
  Profile u0, v0;
};

DataFns build_data(const PresetConfig& c) {
  DataFns d;
  double center = c.center, width = c.width, amp = c.amp, vamp = c.vamp;
  if (c.data_kind == "bump") {
    d.u0 = [=](double r) { return amp * smooth_bump(r, center, width); };
    d.v0 = [=](double r) { return vamp * smooth_bump(r, center, width * 0.9); };
  } else if (c.data_kind == "static-B") {
    // static pedestal with u_r = C r^(-beta), beta = (n-1) b / (a+b), plus a bump
    double a = c.params[0].get_d(), b = c.params[1].get_d(), n = c.params[4].get_d();
    double beta = (n - 1) * b / (a + b);
    double C0 = c.ped_coef;
    d.u0 = [=](double r) {
      double ped = std::abs(beta - 1) < 1e-12 ? C0 * std::log(r)
                                              : C0 * std::pow(r, 1 - beta) / (1 - beta);
      return ped + amp * smooth_bump(r, center, width);
    };
    d.v0 = [=](double r) { return vamp * smooth_bump(r, center, width * 0.9); };
  } else if (c.data_kind == "step-plateau") {
    // inner plateau decaying smoothly to zero; u_r = 0 at both boundaries
    double x = c.plateau, s0 = c.step_at, sw = c.step_width;
    d.u0 = [=](double r) {
      return x * smoother_step((r - s0) / sw) + amp * smooth_bump(r, center, width);
    };
    d.v0 = [=](double r) { return vamp * smooth_bump(r, center, width * 0.9); };
  } else {
    fail("ConfigError", "unknown data kind " + c.data_kind);
  }
  return d;
}

Trajectory run_level(const PresetConfig& c, int level, double dt0) {
  PresetConfig cfg = c;
  Grid grid = cfg.grid;
  for (int l = 0; l < level; ++l) {
    grid.nr *= 2;
    grid.save_every *= 2;
  }
  grid.dt_override = dt0 / std::pow(2.0, level);
  EqPoint eq{cfg.family, cfg.params};
  DataFns d = build_data(cfg);
  Trajectory traj = solve_radial(eq, d.u0, d.v0, grid);
  if (traj.status != Trajectory::Status::kOk)
    fail("BlowUp", "preset " + cfg.name + " flagged: " + traj.flag_note);
  return traj;
}

// stable shared time step for a two-level refinement study
double choose_dt(const PresetConfig& c) {
  // estimate max sqrt(g) on the finest grid used, with a safety margin
  PresetConfig cf = c;
  Grid fine = cf.grid;
  fine.nr *= 2;
  DataFns d = build_data(cf);
  double dr_f = fine.dr();
  double gmax = 0;
  EqPoint eq{cf.family, cf.params};
  std::vector<double> us(fine.nr + 1);
  for (int i = 0; i <= fine.nr; ++i) us[i] = d.u0(fine.r0 + i * dr_f);
  for (int i = 1; i < fine.nr; ++i) {
    double ur = (us[i + 1] - us[i - 1]) / (2 * dr_f);
    gmax = std::max(gmax, eq.g(fine.r0 + i * dr_f, us[i], ur));
  }
  double dt_fine = 0.9 * c.grid.cfl * dr_f / std::sqrt(std::max(gmax, 1e-12));
  return 2 * dt_fine;  // coarse level step
}

Json manufactured_preset(const PresetConfig& c, int refine) {
  // forced run against u*(t, r) = amp exp(-(r-center)^2/width^2) cos t
  EqPoint eq{c.family, c.params};
  double amp = c.amp, center = c.center, width = c.width;
  auto ustar = [=](double t, double r) {
    double s = (r - center) / width;
    return amp * std::exp(-s * s) * std::cos(t);
  };
  auto ustar_r = [=](double t, double r) {
    double s = (r - center) / width;
    return -2 * s / width * ustar(t, r);
  };
  auto ustar_rr = [=](double t, double r) {
    double s = (r - center) / width;
    return (4 * s * s - 2) / (width * width) * ustar(t, r);
  };
  auto forcing = [=](double t, double r) {
    double u = ustar(t, r), ur = ustar_r(t, r), urr = ustar_rr(t, r);
    double utt = -u;
    return utt - eq.g(r, u, ur) * urr - eq.f(r, u, ur);
  };
  auto boundary = [=](double t, double r) { return ustar(t, r); };

  std::vector<double> errs;
  double dt0 = choose_dt(c);
  for (int level = 0; level < refine; ++level) {
    Grid grid = c.grid;
    for (int l = 0; l < level; ++l) {
      grid.nr *= 2;
      grid.save_every *= 2;
    }
    grid.dt_override = dt0 / std::pow(2.0, level);
    SolveOptions opts;
    opts.forcing = forcing;
    opts.boundary_left = boundary;
    opts.boundary_right = boundary;
    Trajectory traj =
        solve_radial(eq, [&](double r) { return ustar(0, r); },
                     [&](double r) { return 0.0; }, grid, opts);
    if (traj.status != Trajectory::Status::kOk)
      fail("BlowUp", "manufactured run flagged: " + traj.flag_note);
    double t_end = traj.times.back();
    double err = 0;
    const auto& u = traj.u.back();
    for (size_t i = 0; i < traj.rs.size(); ++i)
      err = std::max(err, std::abs(u[i] - ustar(t_end, traj.rs[i])));
    errs.push_back(err);
  }
  Json out;
  out["preset"] = c.name;
  out["kind"] = "manufactured";
  Json ej = Json::array();
  for (double e : errs) ej.push_back(fmt_double(e));
  out["linf_errors"] = ej;
  if (errs.size() >= 2) {
    double order = convergence_order(errs[errs.size() - 2], errs.back());
    out["observed_order"] = fmt_double(order);
    out["order_in_band"] = (order >= 1.8 && order <= 2.2);
    out["ok"] = out["order_in_band"].get<bool>();
  } else {
    out["ok"] = errs.back() < 1e-3;
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"energy-A", "kinematic-A", "energy-B-alt", "kinematic-B", "forcing-A",
          "manufactured-A"};
}

PresetResult run_preset(const Database& db, const std::string& name, int refine) {
  PresetConfig c = load_preset(name);
  PresetResult result;
  if (c.data_kind == "manufactured") {
    result.report = manufactured_preset(c, std::max(refine, 2));
    return result;
  }

  double dt0 = choose_dt(c);
  std::vector<Trajectory> levels;
  for (int level = 0; level < std::max(refine, 1); ++level)
    levels.push_back(run_level(c, level, dt0));

  Json out;
  out["preset"] = c.name;
  out["family"] = family_name(c.family);
  Json pj;
  for (int i = 0; i < kNumParams; ++i)
    pj[param_name(static_cast<Param>(i))] = rat_str(c.params[i]);
  out["params"] = pj;
  out["levels"] = static_cast<int>(levels.size());
  bool ok = true;

  Json monitors = Json::array();
  for (auto& [entry_id, vi] : c.monitor) {
    const ConsLawEntry& entry = db.conslaw_by_id(entry_id);
    const ConsVariant& v = entry.variants.at(static_cast<size_t>(vi));
    if (!eval_conditions(v.branch, c.params))
      fail("ConfigError", "preset " + name + ": branch of " + entry_id +
                              " does not hold at the preset parameters");
    Expr T = at_point(apply_branch(v.T, v.branch), c.params);
    Expr X = at_point(apply_branch(v.X, v.branch), c.params);
    Json mj;
    mj["entry"] = entry_id;
    std::vector<double> drifts, fluxdefects;
    for (size_t level = 0; level < levels.size(); ++level) {
      MonitorSeries s = monitor(levels[level], T, X);
      drifts.push_back(s.max_rel_drift);
      fluxdefects.push_back(flux_balance_defect(s));
      if (level == 0) result.series.push_back({entry_id, s});
    }
    Json dj = Json::array();
    for (double d : drifts) dj.push_back(fmt_double(d));
    mj["relative_drift"] = dj;
    Json fj = Json::array();
    for (double d : fluxdefects) fj.push_back(fmt_double(d));
    mj["flux_balance_defect"] = fj;
    if (drifts.size() >= 2) {
      double ratio = drifts.back() / drifts[drifts.size() - 2];
      mj["drift_ratio"] = fmt_double(ratio);
      bool in_band = ratio >= 0.15 && ratio <= 0.45;
      mj["drift_ratio_in_band"] = in_band;
      double fratio = fluxdefects.back() / fluxdefects[fluxdefects.size() - 2];
      mj["flux_defect_ratio"] = fmt_double(fratio);
      ok = ok && in_band;
    }
    monitors.push_back(mj);
  }
  out["monitors"] = monitors;

  if (c.kinematic_fit) {
    Json kj;
    std::vector<double> resids;
    for (auto& traj : levels) {
      MonitorSeries s = kinematic_quantity(traj, c.kinematic_weight);
      resids.push_back(linear_fit_residual(s));
    }
    Json rj = Json::array();
    for (double rr : resids) rj.push_back(fmt_double(rr));
    kj["linear_fit_residual"] = rj;
    if (resids.size() >= 2) {
      double ratio = resids.back() / resids[resids.size() - 2];
      kj["residual_ratio"] = fmt_double(ratio);
      bool decreases = ratio <= 0.5;  // second-order: about 0.25
      kj["second_order_decrease"] = decreases;
      ok = ok && decreases;
    }
    out["kinematic_quantity"] = kj;
  }

  if (c.forcing) {
    Json fj;
    std::vector<double> disc;
    for (auto& traj : levels) {
      ForcingReport rep = forcing_check(traj);
      disc.push_back(rep.rel_discrepancy());
    }
    Json dj = Json::array();
    for (double d : disc) dj.push_back(fmt_double(d));
    fj["relative_discrepancy"] = dj;
    if (disc.size() >= 2) {
      double ratio = disc.back() / disc[disc.size() - 2];
      fj["discrepancy_ratio"] = fmt_double(ratio);
      bool decreases = ratio <= 0.5;
      fj["second_order_decrease"] = decreases;
      ok = ok && decreases;
    }
    out["forcing_identity"] = fj;
  }

  out["ok"] = ok;
  result.report = out;
  return result;
}

std::string series_csv(const MonitorSeries& s) {
  std::ostringstream os;
  os << "t,C,drift,X_left,X_right\n";
  for (size_t i = 0; i < s.times.size(); ++i)
    os << fmt_double(s.times[i]) << "," << fmt_double(s.C[i]) << "," << fmt_double(s.drift[i])
       << "," << fmt_double(s.X_left[i]) << "," << fmt_double(s.X_right[i]) << "\n";
  return os.str();
}

std::string json_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace symmwave
