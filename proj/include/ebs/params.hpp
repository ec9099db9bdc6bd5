#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ebs/core.hpp"
#include "ebs/topology.hpp"

namespace ebs::params {

/// A closed-form result plus the warning raised while computing it, if any.
struct Checked {
  double value = 0.0;
  std::optional<std::string> warning;
};

/// Smallest SETW half-width that fits one message from every neighbour plus
/// the round-trip delay: (beta*|N| + 4*nu) / (2T). Clamped to 0.5.
Checked epsilon_opt(Ticks beta, int neighborhood, Ticks nu, Ticks period);

/// Largest coupling that keeps a heard fire inside the firer's SETW under a
/// one-way delay nu: (epsilon - 2nu/T) / (1 - epsilon).
Checked sigma_max(double epsilon, Ticks nu, Ticks period);
Checked sigma_max_for_delta(double epsilon, double delta);

/// Per-node receive budget C^i = c0 * |N_i| * S_Th / 100, nearest tick.
Ticks adaptive_c(Ticks c0, int neighborhood, double s_th);

struct Stability {
  bool stable = false;
  /// (epsilon - 2 delta) / (1 - epsilon) - sigma; negative when unstable.
  double margin = 0.0;
};

/// delta is the propagation delay as a phase fraction (nu / T).
Stability check_stability(double epsilon, double sigma, double delta);
Stability check_stability(double epsilon, double sigma, Ticks nu, Ticks period);

struct ParamReport {
  double epsilon_opt = 0.0;
  double sigma_max = 0.0;
  bool stable = false;
  double margin = 0.0;
  std::map<NodeId, Ticks> adaptive_c_per_node;
  std::vector<std::string> warnings;
};

struct ReportInputs {
  double epsilon = 0.01;
  double sigma = 0.005;
  Ticks period = 10'000;
  Ticks c0 = 50;
  double s_th = 80.0;
  Ticks nu = 0;
  /// Per-message receive budget used for epsilon_opt; c0 when unset.
  std::optional<Ticks> beta;
};

/// Evaluates every closed form for one configuration. epsilon_opt uses the
/// largest neighbourhood in the topology.
ParamReport make_report(const ReportInputs& in, const Topology& topology);

}  // namespace ebs::params
