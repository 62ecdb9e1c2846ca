#pragma once

#include <json.hpp>

#include "symmwave/homotopy.hpp"
#include "symmwave/numeric.hpp"

namespace symmwave {

using Json = nlohmann::ordered_json;

// ---- symbolic verification sweeps -----------------------------------------

// residual_zero per (row, branch); with check_off_branch, also evaluates the
// residual numerically at `off_branch_samples` admissible points off every
// branch of the row (rows without conditions are reported as not applicable)
Json verify_symmetries(const Database& db, const std::string& table, uint64_t seed,
                       int off_branch_samples);
Json verify_conslaws(const Database& db, const std::string& table);
Json verify_algebras(const Database& db);
Json verify_generator_tables(const Database& db);
Json verify_all(const Database& db, uint64_t seed);

// homotopy (or direct, on log branches) reconstruction of one entry variant,
// with trivial-pair equivalence against the stored pair
Json reconstruct_entry(const Database& db, const ConsLawEntry& entry, size_t variant);
Json reconstruct_table(const Database& db, const std::string& table);

// Noether round trips on the variational branches
Json noether_roundtrips(const Database& db);

// Morawetz identity residuals and conservation-law reproduction
Json morawetz_suite(const Database& db);

// classification of a parameter point
Json classify_point(const Database& db, Family f, const ParamPoint& pt);

// ---- numeric presets -------------------------------------------------------

struct PresetResult {
  Json report;
  std::vector<std::pair<std::string, MonitorSeries>> series;  // name -> series
};

// named presets: energy-A, kinematic-A, energy-B-alt, kinematic-B, forcing-A,
// manufactured-A; refine > 1 runs the two-grid comparison
PresetResult run_preset(const Database& db, const std::string& name, int refine);
std::vector<std::string> preset_names();

std::string series_csv(const MonitorSeries& s);
// deterministic float formatting for byte-identical reports
std::string json_dump(const Json& j);
bool report_ok(const Json& report);

}  // namespace symmwave
