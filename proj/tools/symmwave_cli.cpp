// Batch front end: classify parameter points, run the symbolic verification
// sweeps, reconstruct conservation laws from multipliers, and launch the
// numerical monitoring experiments. Reports are machine-readable JSON;
// simulation series export as CSV.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "symmwave/report.hpp"

using namespace symmwave;

namespace {

struct PointFlags {
  std::string family = "A", a = "1", b = "1", c = "0", p = "2", n = "3";
  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "equation family (A or B)");
    cmd->add_option("--a", a, "coefficient a (rational, e.g. 3/2)");
    cmd->add_option("--b", b, "coefficient b");
    cmd->add_option("--c", c, "coefficient c");
    cmd->add_option("--p", p, "nonlinearity power p");
    cmd->add_option("--n", n, "dimension n");
  }
  Family fam() const {
    auto f = family_from_name(family);
    if (!f) fail("ConfigError", "family must be A or B");
    return *f;
  }
  ParamPoint point() const {
    return {parse_rat(a), parse_rat(b), parse_rat(c), parse_rat(p), parse_rat(n)};
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("ConfigError", "cannot write " + path);
  out << text;
}

void emit(const Json& report, const std::string& out_path, bool quiet) {
  std::string text = json_dump(report);
  if (!out_path.empty()) write_text(out_path, text);
  if (!quiet) std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic and numerical verification lab for radial quasilinear waves"};
  app.require_subcommand(1);

  std::string db_dir, out_path;
  uint64_t seed = 12345;
  bool quiet = false;
  app.add_option("--db", db_dir, "database directory (default: env SYMMWAVE_DB_DIR or db/)");
  app.add_option("--out", out_path, "write the JSON report here");
  app.add_option("--seed", seed, "random seed for sampling checks");
  app.add_flag("--quiet", quiet, "suppress stdout report echo");

  auto* classify = app.add_subcommand("classify", "admitted symmetries and conservation laws at a point");
  PointFlags cpoint;
  cpoint.attach(classify);

  auto* verify = app.add_subcommand("verify", "residual sweeps over the classification database");
  bool verify_all_flag = false;
  std::string verify_table;
  verify->add_flag("--all", verify_all_flag, "run every check");
  verify->add_option("--table", verify_table,
                     "single table (A-symmetries, B-symmetries, A-kinematic, B-kinematic, "
                     "A-genergy, B-genergy, algebras, generators, noether, morawetz)");

  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild (T, X) from a stored multiplier");
  std::string entry_id;
  int variant = -1;
  reconstruct->add_option("--entry", entry_id, "entry id, e.g. A-genergy-1")->required();
  reconstruct->add_option("--variant", variant, "variant index (default: all)");

  auto* simulate = app.add_subcommand("simulate", "numerical conservation monitoring presets");
  std::string preset = "energy-A";
  int refine = 2;
  std::string outdir = ".";
  simulate->add_option("--preset", preset, "preset name (see --list)");
  simulate->add_option("--refine", refine, "number of refinement levels (default 2)");
  simulate->add_option("--outdir", outdir, "directory for report.json and series CSVs");
  bool list_presets = false;
  simulate->add_flag("--list", list_presets, "list preset names and exit");

  auto* sweep = app.add_subcommand("sweep", "classify a rational grid of parameter points");
  PointFlags spoint;
  spoint.attach(sweep);
  int plo = -4, phi = 4, nlo = 2, nhi = 4, clo = -2, chi = 2;
  sweep->add_option("--p-lo", plo);
  sweep->add_option("--p-hi", phi);
  sweep->add_option("--n-lo", nlo);
  sweep->add_option("--n-hi", nhi);
  sweep->add_option("--coef-lo", clo);
  sweep->add_option("--coef-hi", chi);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed() && list_presets) {
      for (auto& n : preset_names()) std::cout << n << "\n";
      return 0;
    }
    Database db = Database::load(resolve_db_dir(db_dir));

    if (classify->parsed()) {
      Json report;
      try {
        report = classify_point(db, cpoint.fam(), cpoint.point());
      } catch (const Error& e) {
        if (std::string(e.code()) == "InadmissibleEquation") {
          std::cerr << e.what() << "\n";
          return 2;
        }
        throw;
      }
      emit(report, out_path, quiet);
      return 0;
    }

    if (verify->parsed()) {
      Json report;
      if (verify_all_flag || verify_table.empty()) {
        report = verify_all(db, seed);
      } else if (verify_table == "A-symmetries" || verify_table == "B-symmetries") {
        report = verify_symmetries(db, verify_table, seed, 20);
      } else if (verify_table == "algebras") {
        report = verify_algebras(db);
      } else if (verify_table == "generators") {
        report = verify_generator_tables(db);
      } else if (verify_table == "noether") {
        report = noether_roundtrips(db);
      } else if (verify_table == "morawetz") {
        report = morawetz_suite(db);
      } else {
        report = verify_conslaws(db, verify_table);
      }
      emit(report, out_path, quiet);
      return report_ok(report) ? 0 : 1;
    }

    if (reconstruct->parsed()) {
      const ConsLawEntry& entry = db.conslaw_by_id(entry_id);
      Json report;
      report["command"] = "reconstruct";
      Json rows = Json::array();
      bool ok = true;
      for (size_t vi = 0; vi < entry.variants.size(); ++vi) {
        if (variant >= 0 && static_cast<size_t>(variant) != vi) continue;
        Json r = reconstruct_entry(db, entry, vi);
        ok = ok && r["ok"].get<bool>();
        rows.push_back(r);
      }
      report["rows"] = rows;
      report["ok"] = ok;
      emit(report, out_path, quiet);
      return ok ? 0 : 1;
    }

    if (simulate->parsed()) {
      PresetResult res = run_preset(db, preset, refine);
      Json report;
      report["command"] = "simulate";
      report["seed"] = seed;
      report["result"] = res.report;
      std::filesystem::create_directories(outdir);
      for (auto& [name, series] : res.series)
        write_text(outdir + "/" + preset + "-" + name + ".csv", series_csv(series));
      std::string rp = out_path.empty() ? outdir + "/" + preset + "-report.json" : out_path;
      write_text(rp, json_dump(report));
      if (!quiet) std::cout << json_dump(report);
      return res.report["ok"].get<bool>() ? 0 : 1;
    }

    if (sweep->parsed()) {
      Json report;
      report["command"] = "sweep";
      Json points = Json::array();
      Family fam = spoint.fam();
      int admissible = 0, skipped = 0;
      for (int pv = plo; pv <= phi; ++pv)
        for (int nv = nlo; nv <= nhi; ++nv)
          for (int av = clo; av <= chi; ++av)
            for (int bv = clo; bv <= chi; ++bv)
              for (int cv = clo; cv <= chi; ++cv) {
                ParamPoint pt{Rat(av), Rat(bv), Rat(cv), Rat(pv), Rat(nv)};
                auto adm = admissibility(fam).eval(pt);
                if (!adm || *adm == 0) {
                  ++skipped;
                  continue;
                }
                ++admissible;
                Database::Admitted got = db.admitted(fam, pt);
                Json pj;
                pj["point"] = point_str(pt);
                pj["symmetries"] = got.symmetries.size();
                pj["conservation_laws"] = got.conslaws.size();
                points.push_back(pj);
              }
      report["family"] = family_name(fam);
      report["admissible_points"] = admissible;
      report["inadmissible_points"] = skipped;
      report["points"] = points;
      report["ok"] = true;
      emit(report, out_path, quiet);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
