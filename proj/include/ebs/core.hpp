#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>

#include "ebs/topology.hpp"

namespace ebs {

/// Model time unit (1 tick = 1 ms unless a scenario says otherwise).
using Ticks = std::int64_t;

/// Fraction of the period elapsed since the node's last own broadcast.
class Phase {
 public:
  constexpr Phase() = default;
  /// Throws std::domain_error outside [0, 1].
  explicit Phase(double value);

  constexpr double value() const { return value_; }
  /// 1 - value: the phase left until the next broadcast.
  constexpr double remaining() const { return 1.0 - value_; }

  friend constexpr auto operator<=>(Phase, Phase) = default;

 private:
  double value_ = 0.0;
};

/// SETW half-width and coupling strength.
struct CouplingParams {
  double epsilon = 0.01;
  double sigma = 0.005;

  /// Validating constructor: epsilon in (0, 0.5], sigma in (0, 1).
  static CouplingParams make(double epsilon, double sigma);

  /// Pairwise stability: sigma < epsilon / (1 - epsilon).
  bool stable() const { return sigma < epsilon / (1.0 - epsilon); }
};

/// g(phi) = sigma * (1 - phi).
double advancement(Phase phi, double sigma);

/// Phase after hearing a neighbour fire. Inside (epsilon, 1 - epsilon) the
/// remaining phase shrinks to g(phi); otherwise the phase is untouched.
Phase phase_advance(Phase phi, const CouplingParams& params);

/// True when phi lies in the synchronization error tolerance window that
/// straddles the node's own fire instant.
bool in_setw(Phase phi, double epsilon);

enum class PhaseDistance {
  Literal,   // |a - b|
  Circular,  // min(|a - b|, 1 - |a - b|)
};

double phase_distance(Phase a, Phase b, PhaseDistance kind);

using PhaseMap = std::map<NodeId, Phase>;

/// Network-averaged neighbour phase difference. Throws std::invalid_argument
/// if a node has no neighbours or no phase entry.
double avg_phase_difference(const PhaseMap& phases, const Topology& topology, PhaseDistance kind);

struct PhaseJump {
  Phase from;
  Phase to;
};

/// (1/n) * sum of |to - from| over every jump taken during the period.
double avg_phase_advancement(std::span<const PhaseJump> jumps, std::size_t n);

struct MetricsSnapshot {
  double avg_phase_diff = 0.0;
  double avg_phase_advancement = 0.0;
  std::int64_t period_index = 0;
};

}  // namespace ebs
