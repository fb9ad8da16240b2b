#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmopt/scenario.hpp"

namespace swarmopt {

/// One convergence.csv row.
struct ConvergenceRow {
    int window = 0;
    int generation = 0;
    double best_of = 0.0;
    double avg_of = 0.0;
};

/// Shortest round-trip decimal representation (what all CSV output uses).
std::string format_double(double v);

/// Writes convergence.csv, topology_<w>.json, topology_<w>.svg and
/// manifest.json into out_dir (created if missing). Everything except the
/// manifest (which carries the start timestamp and wall-clock timings) is a
/// pure function of the resolved config, so reruns with the same seed are
/// byte-identical.
void write_run_outputs(const std::filesystem::path& out_dir, const ScenarioConfig& resolved,
                       const ScenarioResult& result, const std::string& config_path);

std::vector<ConvergenceRow> read_convergence_csv(const std::filesystem::path& file);

/// What `compare` needs from a finished run directory.
struct RunSummary {
    ScenarioKind kind = ScenarioKind::kFixedArea;
    double best_of = 0.0;
    double avg_e2e_bps = 0.0;
    double min_e2e_bps = 0.0;
    std::vector<ConvergenceRow> rows;
};

RunSummary read_run_summary(const std::filesystem::path& dir);

/// Prints the OF ratio, per-run E2E rates and per-generation OF deltas.
/// Throws ConfigError-compatible std::runtime_error on kind mismatch.
void compare_runs(const std::filesystem::path& dir_a, const std::filesystem::path& dir_b,
                  std::ostream& out);

}  // namespace swarmopt
