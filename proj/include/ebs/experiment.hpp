#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ebs/metrics.hpp"
#include "ebs/scenario.hpp"
#include "ebs/sim.hpp"

namespace ebs::cli {

struct ExperimentOptions {
  std::filesystem::path out_dir = "out";
  bool trace = false;
  /// Worker threads for independent runs; 0 picks the hardware concurrency.
  int jobs = 1;
};

struct SummaryRow {
  std::string sweep_param;
  std::string sweep_value;
  sim::Algorithm algorithm = sim::Algorithm::Ebs;
  std::uint64_t seed = 0;
  metrics::SteadyState steady;
  double avg_degree_measured = 0.0;
  double avg_degree_topology = 0.0;
};

inline constexpr std::string_view kSummaryHeader =
    "sweep_param,sweep_value,algorithm,seed,duty_pct,thr_pct,steady_pct,flaps,"
    "avg_degree_measured,avg_degree_topology";

/// File stem of one run, e.g. "ebs_s_th-80_seed1".
std::string run_stem(const SummaryRow& row);

/// Runs every sweep point (and the MRF twin when enabled), then writes one
/// metrics CSV per run, summary.csv and resolved-config.txt. Returns the
/// process exit code; on failure nothing written by this call is left behind.
int run_experiment(const ParsedScenario& scenario, const ExperimentOptions& options,
                   std::ostream& log, std::ostream& err);

/// Same runs without touching the filesystem.
std::vector<SummaryRow> run_points(const ParsedScenario& scenario, int jobs);

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out);

/// Prints the closed-form parameter report. Exit code 2 when the coupling is
/// unstable and `strict` is set, else 0.
int check_params(const ScenarioConfig& config, bool strict, std::ostream& out);

}  // namespace ebs::cli
