#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebs/scenario_config.hpp"

namespace ebs::cli {

/// Parse or range failure. The message carries "source:line: key: reason".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Setting {
  std::string key;
  std::string value;
  int line = 0;
};

struct ParsedScenario {
  std::string source;
  /// Canonical keys in file order, without the sweep entry.
  std::vector<Setting> settings;
  ScenarioConfig config;
};

ParsedScenario parse_scenario(std::istream& in, const std::string& source = "<input>");
ParsedScenario load_scenario(const std::filesystem::path& path);

/// Re-resolves the scenario with `key` forced to `value` (command-line
/// overrides such as --seed).
ParsedScenario with_override(const ParsedScenario& scenario, const std::string& key,
                             const std::string& value);

/// Every accepted key, in the order render_config prints them.
std::vector<std::string> known_keys();

/// Full key = value listing of a resolved config, defaults included.
/// Parsing the output yields the same config.
std::string render_config(const ScenarioConfig& config);

struct SweepPoint {
  /// Empty for a scenario without a sweep axis.
  std::string value;
  ScenarioConfig config;
};

/// One point per sweep value, in file order; a single point without a sweep.
std::vector<SweepPoint> plan_sweep(const ParsedScenario& scenario);

}  // namespace ebs::cli
