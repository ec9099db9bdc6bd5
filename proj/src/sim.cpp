#include "ebs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace ebs::sim {
namespace {

using protocol::Mode;

enum Stream : std::uint64_t {
  kPhases = 1,
  kDelivery = 2,
  kPayload = 3,
  kDrift = 4,
  kChurn = 5,
};

struct Reception {
  std::uint64_t id = 0;
  NodeId sender = 0;
  Ticks end = 0;
  Ticks backoff = 0;
  bool corrupted = false;
};

// Simulator-side bookkeeping that the protocol state does not carry.
struct Timing {
  protocol::ProtocolConfig cfg;
  protocol::MrfConfig mrf;
  Ticks next_fire = 0;
  std::uint64_t generation = 0;
  Ticks awake_since = 0;
  Ticks awake_in_period = 0;
  Ticks present_since = 0;
  std::vector<Reception> receptions;

  Ticks period() const { return cfg.period; }
};

// Awake ticks after a fire: k with k/T < eps. Awake again from the first k
// with k/T >= 1 - eps. Both use the same double comparisons as in_setw.
struct Window {
  Ticks close = 0;
  Ticks reopen = 0;
};

Window steady_window(double eps, Ticks period) {
  const auto T = static_cast<double>(period);
  auto first_at_least = [&](double threshold) {
    auto k = static_cast<Ticks>(std::ceil(threshold * T));
    k = std::clamp<Ticks>(k, 0, period);
    while (k > 0 && static_cast<double>(k - 1) / T >= threshold) --k;
    while (k < period && static_cast<double>(k) / T < threshold) ++k;
    return k;
  };
  return {first_at_least(eps), first_at_least(1.0 - eps)};
}

Phase phase_at(const Timing& tm, Ticks now) {
  const Ticks T = tm.period();
  const Ticks k = std::clamp<Ticks>(now - (tm.next_fire - T), 0, T);
  return Phase(static_cast<double>(k) / static_cast<double>(T));
}

class Engine {
 public:
  Engine(const ScenarioConfig& sc, const Topology& topology, Algorithm algorithm)
      : sc_(sc),
        algorithm_(algorithm),
        delivery_rng_(sc.seed, kDelivery),
        payload_rng_(sc.seed, kPayload),
        churn_rng_(sc.seed, kChurn) {
    world_.topology = topology;
  }

  RunResult run();

 private:
  bool alive(NodeId id) const { return world_.nodes.contains(id); }

  void add_node(NodeId id, Phase start, Ticks now, int known_degree);
  void schedule_fire(NodeId id, Timing& tm);
  void set_awake(protocol::NodeState& st, Timing& tm, bool awake, Ticks now);
  void note_mode(NodeId id, Mode before, Mode after, Ticks now);
  void inject_payloads();

  void on_boundary(std::int64_t k, Ticks now);
  void on_fire(const Event& e);
  void on_window(const Event& e, bool open);
  void close_window(NodeId id, protocol::NodeState& st, Timing& tm, Ticks now);
  void on_arrival(const Event& e);
  void on_reception_end(const Event& e);
  void on_churn(const Event& e);
  void deliver(NodeId receiver, NodeId sender, Ticks now, Ticks backoff);

  void trace(Ticks t, std::string_view event, NodeId node, nlohmann::json detail = {});

  const ScenarioConfig& sc_;
  Algorithm algorithm_;
  World world_;
  std::map<NodeId, Timing> timing_;
  EventQueue queue_;
  Rng delivery_rng_;
  Rng payload_rng_;
  Rng churn_rng_;
  RunResult result_;

  std::set<std::pair<NodeId, NodeId>> received_pairs_;
  std::vector<PhaseJump> jumps_;
  std::set<NodeId> isolated_warned_;
  std::uint64_t next_reception_id_ = 0;
  std::int64_t total_flaps_ = 0;
};

void Engine::trace(Ticks t, std::string_view event, NodeId node, nlohmann::json detail) {
  if (!sc_.trace) return;
  nlohmann::ordered_json line;
  line["time"] = t;
  line["event"] = event;
  line["node"] = node;
  line["detail"] = std::move(detail);
  result_.trace.push_back(line.dump());
}

void Engine::set_awake(protocol::NodeState& st, Timing& tm, bool awake, Ticks now) {
  if (st.awake == awake) return;
  if (st.awake) {
    tm.awake_in_period += now - tm.awake_since;
    st.awake_ticks_total += now - tm.awake_since;
  } else {
    tm.awake_since = now;
  }
  st.awake = awake;
}

void Engine::schedule_fire(NodeId id, Timing& tm) {
  queue_.push(Event{tm.next_fire, EventType::Fire, id, id, tm.generation, 0});
}

void Engine::note_mode(NodeId id, Mode before, Mode after, Ticks now) {
  if (before == after) return;
  result_.mode_changes.push_back({now, id, before, after});
  trace(now, "mode", id, {{"from", protocol::to_string(before)}, {"to", protocol::to_string(after)}});
}

void Engine::add_node(NodeId id, Phase start, Ticks now, int known_degree) {
  Timing tm;
  double skew = 0.0;
  if (auto it = sc_.drift.skew_ppm.find(id); it != sc_.drift.skew_ppm.end()) {
    skew = it->second;
  } else if (sc_.drift.spread_ppm > 0.0) {
    Rng drift_rng(sc_.seed, kDrift + (static_cast<std::uint64_t>(id) << 8));
    skew = (2.0 * drift_rng.uniform() - 1.0) * sc_.drift.spread_ppm;
  }
  tm.cfg = sc_.protocol;
  tm.cfg.period = ClockDriftModel::local_period(sc_.protocol.period, skew);
  tm.mrf = sc_.mrf_config();
  if (sc_.mrf && sc_.mrf->refractory > 0) {
    tm.mrf.refractory = std::llround(static_cast<double>(sc_.mrf->refractory) *
                                     static_cast<double>(tm.cfg.period) /
                                     static_cast<double>(sc_.protocol.period));
  } else {
    tm.mrf.refractory = tm.cfg.period / 2;
  }
  tm.mrf.period = tm.cfg.period;

  const Ticks T = tm.cfg.period;
  const Ticks k = std::clamp<Ticks>(std::llround(start.value() * static_cast<double>(T)), 0, T);
  tm.next_fire = now + (T - k);
  tm.present_since = now;
  tm.awake_since = now;

  protocol::NodeState st;
  if (algorithm_ == Algorithm::Ebs) {
    st = protocol::make_node(id, tm.cfg, Phase(static_cast<double>(k) / static_cast<double>(T)),
                             known_degree);
  } else {
    auto cfg = tm.cfg;
    cfg.duty_cycling = false;
    st = protocol::make_node(id, cfg, Phase(static_cast<double>(k) / static_cast<double>(T)),
                             known_degree);
    if (protocol::mrf_in_refractory(st.phase, tm.mrf)) {
      st.awake = false;
      queue_.push(Event{tm.next_fire - T + tm.mrf.refractory, EventType::Wake, id, id,
                        tm.generation, 0});
    }
  }
  world_.nodes[id] = std::move(st);
  auto [it, _] = timing_.insert_or_assign(id, std::move(tm));
  schedule_fire(id, it->second);
}

void Engine::inject_payloads() {
  for (auto& [id, st] : world_.nodes) st.payload_queued = payload_rng_.bernoulli(sc_.payload_rate);
}

RunResult Engine::run() {
  const Ticks T = sc_.protocol.period;
  const auto ids = world_.topology.node_ids();
  if (!sc_.initial_phases.empty() && sc_.initial_phases.size() != ids.size()) {
    throw std::invalid_argument("initial_phases has " + std::to_string(sc_.initial_phases.size()) +
                                " entries for " + std::to_string(ids.size()) + " nodes");
  }

  result_.avg_degree_topology = world_.topology.average_degree();
  result_.avg_degree_measured = calibrate_avg_degree(world_.topology);
  for (const auto& w : topology_warnings(world_.topology)) result_.warnings.push_back(w);

  Rng phase_rng(sc_.seed, kPhases);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double u = sc_.initial_phases.empty() ? phase_rng.uniform() : sc_.initial_phases[i];
    add_node(ids[i], Phase(u), 0, static_cast<int>(world_.topology.degree(ids[i])));
  }
  inject_payloads();

  for (std::int64_t k = 1; k <= sc_.horizon_periods; ++k) {
    queue_.push(Event{k * T, EventType::PeriodBoundary, 0, 0, static_cast<std::uint64_t>(k), 0});
  }
  for (std::size_t i = 0; i < sc_.churn.size(); ++i) {
    const auto& c = sc_.churn[i];
    queue_.push(Event{c.at, EventType::Churn, c.node, c.node, i, 0});
  }

  const Ticks end = sc_.horizon_periods * T;
  while (!queue_.empty()) {
    const Event e = queue_.pop();
    if (e.time > end) break;
    switch (e.type) {
      case EventType::PeriodBoundary: on_boundary(static_cast<std::int64_t>(e.tag), e.time); break;
      case EventType::Churn: on_churn(e); break;
      case EventType::Sleep: on_window(e, false); break;
      case EventType::Wake: on_window(e, true); break;
      case EventType::ReceptionEnd: on_reception_end(e); break;
      case EventType::Arrival: on_arrival(e); break;
      case EventType::Fire: on_fire(e); break;
    }
    if (e.type == EventType::PeriodBoundary && e.time == end) break;
  }

  result_.final_states = world_.nodes;
  for (const auto& [id, st] : world_.nodes) result_.flap_counts[id] = st.flap_count;
  return std::move(result_);
}

void Engine::on_boundary(std::int64_t k, Ticks now) {
  const Ticks period_start = now - sc_.protocol.period;
  std::vector<Ticks> awake;
  std::vector<Ticks> present;
  PhaseMap phases;
  std::size_t steady = 0;
  for (auto& [id, st] : world_.nodes) {
    Timing& tm = timing_.at(id);
    if (st.awake) {
      tm.awake_in_period += now - tm.awake_since;
      st.awake_ticks_total += now - tm.awake_since;
      tm.awake_since = now;
    }
    awake.push_back(tm.awake_in_period);
    present.push_back(now - std::max(tm.present_since, period_start));
    tm.awake_in_period = 0;
    phases[id] = phase_at(tm, now);
    if (st.mode == Mode::SteadyDutyCycled) ++steady;
  }

  const std::size_t n = world_.nodes.size();
  metrics::MetricsRow row;
  row.period = k - 1;
  const Topology* graph = &world_.topology;
  Topology connected;
  if (world_.topology.max_degree() > 0) {
    bool has_isolated = false;
    for (NodeId id : world_.topology.node_ids()) has_isolated |= world_.topology.degree(id) == 0;
    if (has_isolated) {
      connected = world_.topology;
      for (NodeId id : world_.topology.node_ids()) {
        if (world_.topology.degree(id) == 0) connected.remove_node(id);
      }
      graph = &connected;
    }
    row.dphi_literal = avg_phase_difference(phases, *graph, PhaseDistance::Literal);
    row.dphi_circular = avg_phase_difference(phases, *graph, PhaseDistance::Circular);
  }
  row.dplus = avg_phase_advancement(jumps_, n);
  row.duty_pct = metrics::duty_cycle(awake, present);
  row.thr_pct = result_.avg_degree_measured > 0.0
                    ? metrics::throughput(static_cast<std::int64_t>(received_pairs_.size()),
                                          result_.avg_degree_measured, n)
                    : 0.0;
  row.steady_pct = n == 0 ? 0.0 : 100.0 * static_cast<double>(steady) / static_cast<double>(n);
  row.flaps = total_flaps_;
  result_.series.append(row);

  received_pairs_.clear();
  jumps_.clear();
  inject_payloads();
}

void Engine::on_fire(const Event& e) {
  const NodeId id = e.node;
  if (!alive(id)) return;
  Timing& tm = timing_.at(id);
  if (e.tag != tm.generation || e.time != tm.next_fire) return;

  protocol::NodeState& st = world_.nodes.at(id);
  const bool was_awake = st.awake;
  const Mode before = st.mode;
  st.phase = Phase(1.0);

  std::optional<protocol::BroadcastMessage> msg;
  protocol::NodeState next;
  if (algorithm_ == Algorithm::Ebs) {
    auto fired = protocol::on_fire(std::move(st), tm.cfg, e.time);
    msg = fired.message;
    next = protocol::on_period_start(std::move(fired.node), tm.cfg);
  } else {
    auto fired = protocol::mrf_on_fire(std::move(st), tm.mrf, e.time);
    msg = fired.message;
    next = std::move(fired.node);
  }
  // set_awake compares against the stored flag, so restore the pre-fire
  // value and let it account for the change.
  const bool now_awake = next.awake;
  next.awake = was_awake;
  st = std::move(next);
  set_awake(st, tm, now_awake, e.time);

  note_mode(id, before, st.mode, e.time);
  result_.fires.push_back({e.time, id, msg.has_value()});

  ++tm.generation;
  tm.next_fire = e.time + tm.period();
  schedule_fire(id, tm);
  if (algorithm_ == Algorithm::Ebs) {
    // The window closes at phase epsilon; that is where the period is judged.
    const Window w = steady_window(st.epsilon, tm.period());
    queue_.push(Event{e.time + w.close, EventType::Sleep, id, id, tm.generation, 0});
  } else {
    queue_.push(Event{e.time + tm.mrf.refractory, EventType::Wake, id, id, tm.generation, 0});
  }

  trace(e.time, "fire", id,
        {{"transmit", msg.has_value()}, {"mode", protocol::to_string(st.mode)},
         {"S", st.synchronicity}});
  if (msg) {
    ++result_.counters.messages_emitted;
    const auto counts = deliver_broadcast(*msg, world_.topology, sc_.delay, sc_.fault,
                                          delivery_rng_, queue_, sc_.mac);
    result_.counters.arrival_attempts += counts.attempts;
    result_.counters.lost += counts.lost;
  }
}

void Engine::on_window(const Event& e, bool open) {
  if (!alive(e.node)) return;
  Timing& tm = timing_.at(e.node);
  if (e.tag != tm.generation) return;
  protocol::NodeState& st = world_.nodes.at(e.node);
  if (algorithm_ == Algorithm::Ebs && !open) {
    close_window(e.node, st, tm, e.time);
    return;
  }
  set_awake(st, tm, open, e.time);
  trace(e.time, open ? "wake" : "sleep", e.node);
}

void Engine::close_window(NodeId id, protocol::NodeState& st, Timing& tm, Ticks now) {
  const Mode before = st.mode;
  const int flaps_before = st.flap_count;
  try {
    st = protocol::end_of_period_evaluation(std::move(st), tm.cfg);
  } catch (const protocol::IsolatedNodeError& err) {
    if (isolated_warned_.insert(id).second) result_.warnings.emplace_back(err.what());
  }
  if (st.flap_count != flaps_before) {
    total_flaps_ += st.flap_count - flaps_before;
    result_.flap_counts[id] = st.flap_count;
  }
  note_mode(id, before, st.mode, now);
  trace(now, "evaluate", id, {{"S", st.synchronicity}, {"mode", protocol::to_string(st.mode)}});
  if (st.mode != Mode::SteadyDutyCycled || st.recovering) return;
  const Ticks wake = tm.next_fire - tm.period() + steady_window(st.epsilon, tm.period()).reopen;
  if (wake <= now) return;
  set_awake(st, tm, false, now);
  trace(now, "sleep", id);
  queue_.push(Event{wake, EventType::Wake, id, id, tm.generation, 0});
}

void Engine::on_arrival(const Event& e) {
  const NodeId rx = e.node;
  if (!alive(rx)) return;
  protocol::NodeState& st = world_.nodes.at(rx);
  if (!st.awake) {
    ++result_.counters.dropped_asleep;
    return;
  }
  if (!(sc_.fault.collisions_enabled && sc_.fault.airtime_beta > 0)) {
    deliver(rx, e.sender, e.time, static_cast<Ticks>(e.tag));
    return;
  }
  Timing& tm = timing_.at(rx);
  bool corrupted = false;
  for (Reception& r : tm.receptions) {
    if (r.end > e.time) {
      r.corrupted = true;
      corrupted = true;
    }
  }
  const std::uint64_t id = next_reception_id_++;
  tm.receptions.push_back(
      {id, e.sender, e.time + sc_.fault.airtime_beta, static_cast<Ticks>(e.tag), corrupted});
  queue_.push(Event{e.time + sc_.fault.airtime_beta, EventType::ReceptionEnd, rx, e.sender, id, 0});
}

void Engine::on_reception_end(const Event& e) {
  if (!alive(e.node)) return;
  Timing& tm = timing_.at(e.node);
  auto it = std::find_if(tm.receptions.begin(), tm.receptions.end(),
                         [&](const Reception& r) { return r.id == e.tag; });
  if (it == tm.receptions.end()) return;
  const Reception r = *it;
  tm.receptions.erase(it);
  if (r.corrupted) {
    ++result_.counters.collided;
    trace(e.time, "collision", e.node, {{"sender", r.sender}});
    return;
  }
  if (!world_.nodes.at(e.node).awake) {
    ++result_.counters.dropped_asleep;
    return;
  }
  deliver(e.node, r.sender, e.time, r.backoff);
}

void Engine::deliver(NodeId rx, NodeId sender, Ticks now, Ticks backoff) {
  ++result_.counters.delivered;
  received_pairs_.emplace(sender, rx);
  Timing& tm = timing_.at(rx);
  protocol::NodeState& st = world_.nodes.at(rx);
  // Couple against the instant the sender fired (plus propagation), not the
  // moment the frame got through the channel.
  const Ticks ref = now - backoff;
  const Phase before = ref >= tm.next_fire - tm.period()
                           ? phase_at(tm, ref)
                           : Phase(std::clamp(static_cast<double>(ref - (tm.next_fire - 2 * tm.period())) /
                                                  static_cast<double>(tm.period()),
                                              0.0, 1.0));
  st.phase = before;
  if (algorithm_ == Algorithm::Ebs) {
    st = protocol::on_message(std::move(st), sender, tm.cfg, now);
  } else {
    st = protocol::mrf_on_message(std::move(st), sender, tm.mrf, now);
  }
  if (st.phase == before) return;

  jumps_.push_back({before, st.phase});
  const Ticks remaining = st.pending_tx_delay.value_or(
      std::llround(st.phase.remaining() * static_cast<double>(tm.period())));
  ++tm.generation;
  tm.next_fire = std::max(now, ref + remaining);
  schedule_fire(rx, tm);
  trace(now, "jump", rx, {{"sender", sender}, {"from", before.value()}, {"to", st.phase.value()}});
  st.phase = phase_at(tm, now);
}

void Engine::on_churn(const Event& e) {
  const ChurnEvent& c = sc_.churn.at(e.tag);
  if (c.action == ChurnEvent::Action::Leave) {
    if (!alive(c.node)) {
      throw std::invalid_argument("churn: leave of unknown node " + std::to_string(c.node));
    }
    world_ = apply_churn(c, std::move(world_), sc_.protocol);
    timing_.erase(c.node);
    trace(e.time, "leave", c.node);
    return;
  }
  const double u = c.initial_phase.value_or(churn_rng_.uniform());
  world_ = apply_churn(c, std::move(world_), sc_.protocol);
  add_node(c.node, Phase(u), e.time, static_cast<int>(world_.topology.degree(c.node)));
  if (sc_.payload_rate > 0.0) world_.nodes.at(c.node).payload_queued = payload_rng_.bernoulli(sc_.payload_rate);
  trace(e.time, "join", c.node, {{"links", c.links}});
}

}  // namespace

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::PeriodBoundary: return "period";
    case EventType::Churn: return "churn";
    case EventType::Sleep: return "sleep";
    case EventType::Wake: return "wake";
    case EventType::ReceptionEnd: return "reception_end";
    case EventType::Arrival: return "arrival";
    case EventType::Fire: return "fire";
  }
  return "?";
}

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Ebs ? "ebs" : "mrf";
}

bool EventQueue::Later::operator()(const Event& a, const Event& b) const {
  return std::tie(a.time, a.type, a.node, a.sender, a.seq) >
         std::tie(b.time, b.type, b.node, b.sender, b.seq);
}

void EventQueue::push(Event e) {
  e.seq = next_seq_++;
  heap_.push(e);
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  return e;
}

void DelayModel::validate() const {
  if (nu < 0 || lo < 0 || hi < 0) throw std::invalid_argument("delays must be non-negative");
  if (kind == Kind::UniformRandom && lo > hi) throw std::invalid_argument("delay.lo > delay.hi");
  for (const auto& [link, d] : overrides) {
    if (d < 0) throw std::invalid_argument("delay override must be non-negative");
  }
}

Ticks DelayModel::sample(NodeId from, NodeId to, Rng& rng) const {
  if (auto it = overrides.find({from, to}); it != overrides.end()) return it->second;
  switch (kind) {
    case Kind::None: return 0;
    case Kind::Deterministic: return nu;
    case Kind::UniformRandom: return rng.uniform_int(lo, hi);
  }
  return 0;
}

Ticks DelayModel::nominal() const {
  switch (kind) {
    case Kind::None: return 0;
    case Kind::Deterministic: return nu;
    case Kind::UniformRandom: return (lo + hi) / 2;
  }
  return 0;
}

void LinkFaultModel::validate() const {
  if (!(loss_probability >= 0.0 && loss_probability <= 1.0)) {
    throw std::invalid_argument("fault.loss must lie in [0, 1]");
  }
  if (airtime_beta < 0) throw std::invalid_argument("fault.airtime must be non-negative");
}

void MacModel::validate() const {
  if (backoff_max < 0) throw std::invalid_argument("mac.backoff must be non-negative");
}

Ticks ClockDriftModel::local_period(Ticks period, double skew_ppm) {
  return std::max<Ticks>(1, std::llround(static_cast<double>(period) * (1.0 + skew_ppm * 1e-6)));
}

DeliveryCounts deliver_broadcast(const protocol::BroadcastMessage& msg, const Topology& topology,
                                 const DelayModel& delay, const LinkFaultModel& faults, Rng& rng,
                                 EventQueue& queue, const MacModel& mac) {
  DeliveryCounts counts;
  if (!topology.contains(msg.sender)) return counts;
  const Ticks backoff = mac.backoff_max > 0 ? rng.uniform_int(0, mac.backoff_max) : 0;
  for (NodeId rx : topology.listeners(msg.sender)) {
    ++counts.attempts;
    if (rng.bernoulli(faults.loss_probability)) {
      ++counts.lost;
      continue;
    }
    const Ticks d = delay.sample(msg.sender, rx, rng);
    queue.push(Event{msg.emitted_at + backoff + d, EventType::Arrival, rx, msg.sender,
                     static_cast<std::uint64_t>(backoff), 0});
  }
  return counts;
}

double calibrate_avg_degree(const Topology& topology) {
  if (topology.size() == 0) return 0.0;
  EventQueue queue;
  Rng rng(0);
  const DelayModel no_delay;
  const LinkFaultModel lossless;
  for (NodeId id : topology.node_ids()) {
    deliver_broadcast(protocol::BroadcastMessage{id, 0, false}, topology, no_delay, lossless, rng,
                      queue);
  }
  return static_cast<double>(queue.size()) / static_cast<double>(topology.size());
}

World apply_churn(const ChurnEvent& event, World world, const protocol::ProtocolConfig& cfg,
                  Phase join_phase) {
  if (event.action == ChurnEvent::Action::Leave) {
    if (!world.nodes.contains(event.node) || !world.topology.contains(event.node)) {
      throw std::invalid_argument("churn: leave of unknown node " + std::to_string(event.node));
    }
    world.topology.remove_node(event.node);
    world.nodes.erase(event.node);
    return world;
  }
  if (world.nodes.contains(event.node) || world.topology.contains(event.node)) {
    throw std::invalid_argument("churn: join id " + std::to_string(event.node) + " already in use");
  }
  for (NodeId peer : event.links) {
    if (!world.topology.contains(peer)) {
      throw std::invalid_argument("churn: join links to unknown node " + std::to_string(peer));
    }
  }
  world.topology.add_node(event.node);
  for (NodeId peer : event.links) world.topology.add_edge(event.node, peer);
  world.nodes[event.node] = protocol::make_node(event.node, cfg, join_phase,
                                                static_cast<int>(event.links.size()));
  return world;
}

protocol::Mode mode_at(const RunResult& result, NodeId node, Ticks at, protocol::Mode initial) {
  protocol::Mode mode = initial;
  for (const ModeChange& c : result.mode_changes) {
    if (c.at > at) break;
    if (c.node == node) mode = c.to;
  }
  return mode;
}

RunResult run(const ScenarioConfig& scenario, const Topology& topology, Algorithm algorithm) {
  scenario.validate();
  if (algorithm == Algorithm::Mrf) scenario.mrf_config().validate();
  Engine engine(scenario, topology, algorithm);
  return engine.run();
}

RunResult run(const ScenarioConfig& scenario, Algorithm algorithm) {
  return run(scenario, build_topology(scenario.topology, scenario.seed), algorithm);
}

}  // namespace ebs::sim
