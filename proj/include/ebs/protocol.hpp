#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>

#include "ebs/core.hpp"
#include "ebs/topology.hpp"

namespace ebs::protocol {

enum class Mode { Initialization, Synchronization, SteadyDutyCycled };

enum class Variant {
  /// Every fire is a broadcast; a bare sync message is created when no payload is queued.
  NoReachback,
  /// Phases advance the same way but a fire only transmits a queued payload.
  PartialReachback,
};

std::string_view to_string(Mode mode);
std::string_view to_string(Variant variant);

struct ProtocolConfig {
  Ticks period = 10'000;
  double epsilon = 0.01;
  double sigma = 0.005;
  /// Synchronization threshold, percent.
  double s_th = 80.0;
  /// Minimum per-message receive/process budget.
  Ticks c0 = 50;
  Variant variant = Variant::NoReachback;
  bool adaptive_c = false;
  int init_listen_periods = 5;
  /// When false nodes start in, and never leave, the synchronization state
  /// (always awake). Used to study the coupling dynamics on their own.
  bool duty_cycling = true;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// SETW half-width a node uses: the configured epsilon, widened to
/// C^i / (2T) when adaptive C is on. Never above 0.5.
double effective_epsilon(const ProtocolConfig& cfg, int neighbor_estimate);

struct NodeState {
  NodeId id = 0;
  Mode mode = Mode::Initialization;
  Phase phase;
  int neighbor_count_estimate = 0;
  /// Senders heard inside the current window (H_i); the window straddles
  /// the wrap, so this survives on_period_start and is reset by evaluation.
  std::set<NodeId> heard_this_period;
  /// Every distinct sender heard since the last evaluation (or since start
  /// while initializing); feeds the neighbourhood estimate.
  std::set<NodeId> senders_heard;
  double synchronicity = 0.0;
  /// Ticks until the delayed broadcast that follows a phase jump.
  std::optional<Ticks> pending_tx_delay;
  /// Phase reached by the last jump this period (partial reach-back bookkeeping).
  std::optional<Phase> stored_advance;
  bool awake = true;
  Ticks awake_ticks_total = 0;
  int flap_count = 0;
  int init_periods_left = 0;
  /// Set for the single fully-awake period that follows a flap.
  bool recovering = false;
  bool payload_queued = false;
  double epsilon = 0.01;

  CouplingParams coupling(double sigma) const { return CouplingParams{epsilon, sigma}; }
};

struct BroadcastMessage {
  NodeId sender = 0;
  Ticks emitted_at = 0;
  /// True when an upper-layer payload rides along with the sync byte.
  bool has_payload = false;
};

struct FireResult {
  NodeState node;
  std::optional<BroadcastMessage> message;
};

/// Raised when a synchronizing node has no known neighbours.
class IsolatedNodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fresh node. With duty cycling off the node skips initialization and uses
/// `known_degree` as its neighbour estimate.
NodeState make_node(NodeId id, const ProtocolConfig& cfg, Phase initial, int known_degree = 0);

/// Called at each wrap (phase == 0). Throws std::logic_error otherwise.
NodeState on_period_start(NodeState node, const ProtocolConfig& cfg);

/// Called when the phase reaches 1.
FireResult on_fire(NodeState node, const ProtocolConfig& cfg, Ticks now);

/// A neighbour's broadcast reached this (awake) node.
NodeState on_message(NodeState node, NodeId sender, const ProtocolConfig& cfg, Ticks now);

/// Mode transitions once the window around the wrap has closed (phase
/// epsilon). Resets both sender sets. Throws IsolatedNodeError when a
/// synchronizing node's neighbour estimate is zero.
NodeState end_of_period_evaluation(NodeState node, const ProtocolConfig& cfg);

/// Refractory-period baseline (MRF): fires ignored and radio off for the
/// first `refractory` ticks after each own fire.
struct MrfConfig {
  Ticks period = 10'000;
  Ticks refractory = 5'000;
  CouplingParams coupling;

  static MrfConfig half_period(Ticks period, CouplingParams coupling);
  void validate() const;
};

bool mrf_in_refractory(Phase phi, const MrfConfig& cfg);
NodeState mrf_on_message(NodeState node, NodeId sender, const MrfConfig& cfg, Ticks now);
FireResult mrf_on_fire(NodeState node, const MrfConfig& cfg, Ticks now);

}  // namespace ebs::protocol
