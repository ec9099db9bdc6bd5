#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ebs/core.hpp"
#include "ebs/protocol.hpp"
#include "ebs/random.hpp"
#include "ebs/topology.hpp"

namespace ebs {

namespace sim {

struct DelayModel {
  enum class Kind { None, Deterministic, UniformRandom };
  Kind kind = Kind::None;
  /// Deterministic one-way delay.
  Ticks nu = 0;
  /// Inclusive bounds for UniformRandom.
  Ticks lo = 0;
  Ticks hi = 0;
  /// Per-direction (from, to) overrides; take precedence over `kind`.
  std::map<std::pair<NodeId, NodeId>, Ticks> overrides;

  void validate() const;
  /// Draws from `rng` only for UniformRandom links without an override.
  Ticks sample(NodeId from, NodeId to, Rng& rng) const;
  /// Nominal one-way delay (nu, or the uniform midpoint).
  Ticks nominal() const;
};

struct LinkFaultModel {
  double loss_probability = 0.0;
  bool collisions_enabled = false;
  /// Receive/process time of one message. Two receptions at one node whose
  /// [start, start + airtime) intervals overlap destroy each other.
  Ticks airtime_beta = 0;

  void validate() const;
};

/// Channel access before a broadcast goes out. The transmission starts a
/// uniform [0, backoff_max] ticks after the fire, drawn once per broadcast.
/// The frame carries that offset (MAC timestamping), so receivers couple
/// against the fire instant; airtime and the awake check use the real arrival.
struct MacModel {
  Ticks backoff_max = 0;

  void validate() const;
};

struct ClockDriftModel {
  /// Skews drawn uniformly from [-spread, +spread] ppm for nodes without an
  /// explicit entry.
  double spread_ppm = 0.0;
  std::map<NodeId, double> skew_ppm;

  /// Local period of a node with skew s: T * (1 + s * 1e-6), nearest tick.
  static Ticks local_period(Ticks period, double skew_ppm);
};

struct ChurnEvent {
  enum class Action { Join, Leave };
  Ticks at = 0;
  Action action = Action::Leave;
  NodeId node = 0;
  /// Join only: the joiner's links.
  std::vector<NodeId> links;
  /// Join only: phase at join time; seeded random when unset.
  std::optional<double> initial_phase;
};

}  // namespace sim

struct TopologySpec {
  enum class Kind { Grid, Torus, Complete, RandomGeometric, File };
  Kind kind = Kind::Torus;
  int rows = 5;
  int cols = 5;
  int n = 25;
  std::optional<double> radius;
  /// Random geometric only: tune the radius to this average degree.
  std::optional<double> target_degree;
  /// Random geometric only; defaults to the run seed.
  std::optional<std::uint64_t> seed;
  std::string path;
  bool directed = false;
};

Topology build_topology(const TopologySpec& spec, std::uint64_t run_seed);

struct MrfSpec {
  /// 0 selects T/2.
  Ticks refractory = 0;
};

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct ScenarioConfig {
  TopologySpec topology;
  protocol::ProtocolConfig protocol;
  /// Probability that a node gets an upper-layer payload in a period.
  double payload_rate = 1.0;
  std::optional<MrfSpec> mrf;
  sim::DelayModel delay;
  sim::LinkFaultModel fault;
  sim::MacModel mac;
  sim::ClockDriftModel drift;
  std::vector<sim::ChurnEvent> churn;
  int horizon_periods = 50;
  std::uint64_t seed = 1;
  /// Periods averaged for the steady-state summary.
  int steady_window = 10;
  /// Explicit start phases by node order; empty means seeded uniform random.
  std::vector<double> initial_phases;
  bool trace = false;
  std::optional<SweepAxis> sweep;

  protocol::MrfConfig mrf_config() const;
  /// Throws std::invalid_argument on cross-field inconsistencies.
  void validate() const;
};

}  // namespace ebs
