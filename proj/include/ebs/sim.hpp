#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "ebs/metrics.hpp"
#include "ebs/protocol.hpp"
#include "ebs/random.hpp"
#include "ebs/scenario_config.hpp"
#include "ebs/topology.hpp"

namespace ebs::sim {

struct SimTime {
  Ticks ticks = 0;
  friend constexpr auto operator<=>(SimTime, SimTime) = default;
};

/// Lower value runs first among events sharing a tick. Windows open and close
/// before receptions so a tick's awake state is settled before anything lands
/// on it; receptions precede fires so a node at phase 1 still hears a
/// simultaneous neighbour.
enum class EventType : std::uint8_t {
  PeriodBoundary = 0,
  Churn = 1,
  Sleep = 2,
  Wake = 3,
  ReceptionEnd = 4,
  Arrival = 5,
  Fire = 6,
};

std::string_view to_string(EventType type);

struct Event {
  Ticks time = 0;
  EventType type = EventType::Fire;
  NodeId node = 0;
  NodeId sender = 0;
  /// Generation stamp, churn index, reception id or MAC backoff depending on type.
  std::uint64_t tag = 0;
  /// Insertion order; final tie-break.
  std::uint64_t seq = 0;
};

/// Min-queue ordered by (time, type, node, sender, insertion order).
class EventQueue {
 public:
  void push(Event e);
  Event pop();
  const Event& top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const;
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

enum class Algorithm { Ebs, Mrf };
std::string_view to_string(Algorithm algorithm);

struct DeliveryCounts {
  std::size_t attempts = 0;
  std::size_t lost = 0;
};

/// Enqueues one Arrival per listener of the sender at emission + backoff +
/// sampled delay, minus those dropped by the loss draw. The backoff is drawn
/// first, once per message; then listeners are visited in ascending id order
/// and each draws loss before delay. Arrival events carry the backoff in `tag`.
DeliveryCounts deliver_broadcast(const protocol::BroadcastMessage& msg, const Topology& topology,
                                 const DelayModel& delay, const LinkFaultModel& faults, Rng& rng,
                                 EventQueue& queue, const MacModel& mac = {});

/// Average degree measured the way a testbed would: every node broadcasts
/// once with everyone awake on lossless links; receptions / n.
double calibrate_avg_degree(const Topology& topology);

struct World {
  Topology topology;
  std::map<NodeId, protocol::NodeState> nodes;
};

/// Join adds a fresh initializing node and its links; Leave removes the node
/// and its links. Survivors' neighbour estimates are left alone. Throws
/// std::invalid_argument for a leave of an unknown id or a join of a used id.
World apply_churn(const ChurnEvent& event, World world, const protocol::ProtocolConfig& cfg,
                  Phase join_phase = Phase(0.0));

struct ModeChange {
  Ticks at = 0;
  NodeId node = 0;
  protocol::Mode from = protocol::Mode::Initialization;
  protocol::Mode to = protocol::Mode::Initialization;
};

struct FireRecord {
  Ticks at = 0;
  NodeId node = 0;
  bool transmitted = false;
};

struct RunCounters {
  std::uint64_t messages_emitted = 0;
  std::uint64_t arrival_attempts = 0;
  std::uint64_t lost = 0;
  std::uint64_t dropped_asleep = 0;
  std::uint64_t collided = 0;
  std::uint64_t delivered = 0;
};

struct RunResult {
  metrics::MetricsSeries series;
  std::vector<ModeChange> mode_changes;
  std::vector<FireRecord> fires;
  std::map<NodeId, protocol::NodeState> final_states;
  /// Flap counts per node, including nodes that later left.
  std::map<NodeId, int> flap_counts;
  double avg_degree_measured = 0.0;
  double avg_degree_topology = 0.0;
  RunCounters counters;
  std::vector<std::string> warnings;
  /// Newline-delimited JSON event records when tracing is enabled.
  std::vector<std::string> trace;
};

/// Mode of `node` at time `at`, reconstructed from the mode timeline.
protocol::Mode mode_at(const RunResult& result, NodeId node, Ticks at,
                       protocol::Mode initial = protocol::Mode::Initialization);

/// Runs one scenario to its horizon. Bitwise deterministic for a given
/// (scenario, algorithm). Throws std::invalid_argument on bad input.
RunResult run(const ScenarioConfig& scenario, Algorithm algorithm = Algorithm::Ebs);
RunResult run(const ScenarioConfig& scenario, const Topology& topology,
              Algorithm algorithm = Algorithm::Ebs);

}  // namespace ebs::sim
