#include "ebs/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ebs {

Phase::Phase(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("phase out of [0, 1]: " + std::to_string(value));
  }
}

CouplingParams CouplingParams::make(double epsilon, double sigma) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    throw std::invalid_argument("epsilon must lie in (0, 0.5], got " + std::to_string(epsilon));
  }
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("sigma must lie in (0, 1), got " + std::to_string(sigma));
  }
  return CouplingParams{epsilon, sigma};
}

double advancement(Phase phi, double sigma) { return sigma * phi.remaining(); }

Phase phase_advance(Phase phi, const CouplingParams& params) {
  const double v = phi.value();
  if (params.epsilon < v && v < 1.0 - params.epsilon) {
    // 1 - g(phi) > phi whenever sigma < 1, so phases never move backwards.
    return Phase(1.0 - advancement(phi, params.sigma));
  }
  return phi;
}

bool in_setw(Phase phi, double epsilon) {
  return phi.value() <= epsilon || phi.value() >= 1.0 - epsilon;
}

double phase_distance(Phase a, Phase b, PhaseDistance kind) {
  const double d = std::abs(a.value() - b.value());
  return kind == PhaseDistance::Circular ? std::min(d, 1.0 - d) : d;
}

double avg_phase_difference(const PhaseMap& phases, const Topology& topology, PhaseDistance kind) {
  const auto ids = topology.node_ids();
  if (ids.empty()) return 0.0;
  auto lookup = [&](NodeId id) {
    auto it = phases.find(id);
    if (it == phases.end()) {
      throw std::invalid_argument("no phase for node " + std::to_string(id));
    }
    return it->second;
  };
  double total = 0.0;
  for (NodeId i : ids) {
    const auto& nbrs = topology.neighbors(i);
    if (nbrs.empty()) {
      throw std::invalid_argument("node " + std::to_string(i) +
                                  " has no neighbours; phase difference is undefined");
    }
    const Phase pi = lookup(i);
    double local = 0.0;
    for (NodeId j : nbrs) local += phase_distance(pi, lookup(j), kind);
    total += local / static_cast<double>(nbrs.size());
  }
  return total / static_cast<double>(ids.size());
}

double avg_phase_advancement(std::span<const PhaseJump> jumps, std::size_t n) {
  if (n == 0) return 0.0;
  double total = 0.0;
  for (const PhaseJump& j : jumps) total += std::abs(j.to.value() - j.from.value());
  return total / static_cast<double>(n);
}

}  // namespace ebs
