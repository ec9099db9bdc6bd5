// ebs: run, sweep and sanity-check firefly synchronization scenarios.

#include <iostream>

#include <CLI11.hpp>

#include "ebs/experiment.hpp"
#include "ebs/scenario.hpp"

namespace {

struct Common {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  bool trace = false;
  int jobs = 1;
};

ebs::cli::ParsedScenario load(const Common& c) {
  auto parsed = ebs::cli::load_scenario(c.scenario);
  if (c.seed) parsed = ebs::cli::with_override(parsed, "run.seed", std::to_string(*c.seed));
  return parsed;
}

void add_common(CLI::App* sub, Common& c, bool outputs) {
  sub->add_option("scenario", c.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "Override run.seed");
  if (outputs) {
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_flag("--trace", c.trace, "Write an NDJSON event trace per run");
    sub->add_option("--jobs", c.jobs, "Parallel runs (0 = all cores)")->capture_default_str()
        ->check(CLI::NonNegativeNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emergent broadcast slot simulator"};
  app.require_subcommand(1);

  Common run_opts, sweep_opts, check_opts;
  bool strict = false;
  bool list_keys = false;

  auto* run = app.add_subcommand("run", "Run one scenario (plus its MRF twin when enabled)");
  add_common(run, run_opts, true);
  auto* sweep = app.add_subcommand("sweep", "Run every point of the scenario's sweep axis");
  add_common(sweep, sweep_opts, true);
  auto* check = app.add_subcommand("check", "Print stability bounds and derived parameters");
  add_common(check, check_opts, false);
  check->add_flag("--strict", strict, "Exit nonzero when the coupling is unstable");
  auto* keys = app.add_subcommand("keys", "List accepted scenario keys");
  keys->callback([&] { list_keys = true; });

  CLI11_PARSE(app, argc, argv);

  if (list_keys) {
    for (const auto& k : ebs::cli::known_keys()) std::cout << k << '\n';
    return 0;
  }

  try {
    if (*check) {
      const auto parsed = load(check_opts);
      return ebs::cli::check_params(parsed.config, strict, std::cout);
    }
    const bool is_sweep = sweep->parsed();
    const Common& c = is_sweep ? sweep_opts : run_opts;
    const auto parsed = load(c);
    if (is_sweep && !parsed.config.sweep) {
      std::cerr << "error: " << c.scenario << " defines no sweep.<key> axis\n";
      return 1;
    }
    if (!is_sweep && parsed.config.sweep) {
      std::cerr << "error: " << c.scenario << " defines a sweep axis; use `ebs sweep`\n";
      return 1;
    }
    return ebs::cli::run_experiment(parsed, {c.out, c.trace, c.jobs}, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
