#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ebs/sim.hpp"

using namespace ebs;
using namespace ebs::sim;
using protocol::Mode;

namespace {

ScenarioConfig pair_scenario() {
  ScenarioConfig sc;
  sc.topology.kind = TopologySpec::Kind::Complete;
  sc.topology.n = 2;
  sc.protocol.period = 10'000;
  sc.protocol.epsilon = 0.01;
  sc.protocol.sigma = 0.005;
  sc.horizon_periods = 30;
  sc.seed = 3;
  return sc;
}

ScenarioConfig path_scenario(std::vector<double> phases) {
  ScenarioConfig sc;
  sc.protocol.duty_cycling = false;
  sc.horizon_periods = 1;
  sc.initial_phases = std::move(phases);
  return sc;
}

}  // namespace

TEST_CASE("event ordering") {
  EventQueue q;
  q.push(Event{10, EventType::Fire, 1, 1});
  q.push(Event{10, EventType::Arrival, 2, 5});
  q.push(Event{10, EventType::Arrival, 1, 7});
  q.push(Event{10, EventType::PeriodBoundary, 9, 0});
  q.push(Event{5, EventType::Fire, 4, 4});
  q.push(Event{10, EventType::Arrival, 1, 7, 42});

  CHECK(q.pop().time == 5);
  CHECK(q.pop().type == EventType::PeriodBoundary);
  Event a = q.pop();
  CHECK((a.type == EventType::Arrival && a.node == 1 && a.tag == 0));
  a = q.pop();
  CHECK((a.node == 1 && a.tag == 42));
  CHECK(q.pop().node == 2);
  CHECK(q.pop().type == EventType::Fire);
  CHECK(q.empty());
}

TEST_CASE("broadcast delivery") {
  const Topology torus = make_regular_grid(5, 5, true);
  DelayModel delay;
  delay.kind = DelayModel::Kind::Deterministic;
  delay.nu = 10;
  LinkFaultModel faults;
  Rng rng(1, 2);

  SUBCASE("lossless fixed delay") {
    EventQueue q;
    const auto c = deliver_broadcast({12, 1000, false}, torus, delay, faults, rng, q);
    CHECK(c.attempts == 4);
    CHECK(c.lost == 0);
    REQUIRE(q.size() == 4);
    std::vector<NodeId> receivers;
    while (!q.empty()) {
      const Event e = q.pop();
      CHECK(e.time == 1010);
      CHECK(e.type == EventType::Arrival);
      CHECK(e.sender == 12);
      receivers.push_back(e.node);
    }
    std::sort(receivers.begin(), receivers.end());
    CHECK(receivers == torus.neighbors(12));
  }
  SUBCASE("certain loss") {
    faults.loss_probability = 1.0;
    EventQueue q;
    const auto c = deliver_broadcast({12, 1000, false}, torus, delay, faults, rng, q);
    CHECK(c.attempts == 4);
    CHECK(c.lost == 4);
    CHECK(q.empty());
  }
  SUBCASE("partial loss conserves attempts") {
    faults.loss_probability = 0.5;
    std::size_t attempts = 0, lost = 0, queued = 0;
    for (NodeId id : torus.node_ids()) {
      EventQueue q;
      const auto c = deliver_broadcast({id, 0, false}, torus, delay, faults, rng, q);
      attempts += c.attempts;
      lost += c.lost;
      queued += q.size();
    }
    CHECK(attempts == 100);
    CHECK(lost + queued == attempts);
  }
  SUBCASE("backoff is shared by every copy") {
    MacModel mac{100};
    for (int i = 0; i < 20; ++i) {
      EventQueue q;
      deliver_broadcast({0, 500, false}, torus, delay, faults, rng, q, mac);
      const Event first = q.pop();
      CHECK(first.tag <= 100);
      CHECK(first.time == 510 + static_cast<Ticks>(first.tag));
      while (!q.empty()) {
        const Event e = q.pop();
        CHECK(e.tag == first.tag);
        CHECK(e.time == first.time);
      }
    }
    CHECK_THROWS_AS(MacModel{-1}.validate(), std::invalid_argument);
  }
  SUBCASE("unknown sender") {
    EventQueue q;
    CHECK(deliver_broadcast({99, 0, false}, torus, delay, faults, rng, q).attempts == 0);
  }
}

TEST_CASE("calibrated degree") {
  CHECK(calibrate_avg_degree(make_regular_grid(5, 5, true)) == doctest::Approx(4.0));
  CHECK(calibrate_avg_degree(make_regular_grid(3, 3, false)) == doctest::Approx(24.0 / 9.0));
}

TEST_CASE("overlapping receptions collide") {
  // Path 0-1-2: node 0 fires at 5000 and node 2 three ticks later, so their
  // frames overlap at node 1. Node 1 starts at phase 0 and first fires at the
  // horizon.
  Topology path;
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  ScenarioConfig sc = path_scenario({0.5, 0.0, 0.4997});
  sc.fault.collisions_enabled = true;
  sc.fault.airtime_beta = 5;
  const RunResult r = run(sc, path);
  CHECK(r.counters.messages_emitted == 2);
  CHECK(r.counters.collided == 2);
  CHECK(r.counters.delivered == 0);

  // Five ticks apart the first frame has ended when the second begins.
  sc.initial_phases = {0.5, 0.0, 0.4995};
  const RunResult apart = run(sc, path);
  CHECK(apart.counters.collided == 0);
  CHECK(apart.counters.delivered >= 2);
  sc.initial_phases = {0.5, 0.0, 0.4997};
  sc.fault.collisions_enabled = false;
  CHECK(run(sc, path).counters.collided == 0);
}

TEST_CASE("churn") {
  World w{make_regular_grid(3, 3, true), {}};
  protocol::ProtocolConfig cfg;
  cfg.duty_cycling = false;
  for (NodeId id : w.topology.node_ids()) w.nodes[id] = protocol::make_node(id, cfg, Phase(0.0), 4);

  CHECK_THROWS_AS(apply_churn(ChurnEvent{0, ChurnEvent::Action::Leave, 42, {}}, w, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_churn(ChurnEvent{0, ChurnEvent::Action::Join, 3, {1}}, w, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_churn(ChurnEvent{0, ChurnEvent::Action::Join, 20, {77}}, w, cfg),
                  std::invalid_argument);

  World left = apply_churn(ChurnEvent{0, ChurnEvent::Action::Leave, 4, {}}, w, cfg);
  CHECK_FALSE(left.topology.contains(4));
  CHECK_FALSE(left.nodes.contains(4));
  CHECK(left.topology.degree(1) == 3);
  // Survivors keep their estimate until they notice.
  CHECK(left.nodes.at(1).neighbor_count_estimate == 4);

  World joined = apply_churn(ChurnEvent{0, ChurnEvent::Action::Join, 9, {0, 1}}, w, cfg, Phase(0.3));
  CHECK(joined.topology.degree(9) == 2);
  CHECK(joined.nodes.at(9).neighbor_count_estimate == 2);
  cfg.duty_cycling = true;
  joined = apply_churn(ChurnEvent{0, ChurnEvent::Action::Join, 9, {0, 1}}, w, cfg, Phase(0.3));
  CHECK(joined.nodes.at(9).mode == Mode::Initialization);
  CHECK(joined.nodes.at(9).phase.value() == 0.3);
}

TEST_CASE("runs are deterministic") {
  ScenarioConfig sc = pair_scenario();
  sc.topology.kind = TopologySpec::Kind::Torus;
  sc.payload_rate = 0.5;
  sc.fault.loss_probability = 0.1;
  sc.trace = true;
  const RunResult a = run(sc);
  const RunResult b = run(sc);
  CHECK(a.series == b.series);
  CHECK(a.trace == b.trace);
  CHECK(a.counters.delivered == b.counters.delivered);
  sc.seed = 4;
  CHECK_FALSE(run(sc).trace == a.trace);
}

TEST_CASE("every broadcast reaches each neighbour once") {
  ScenarioConfig sc = pair_scenario();
  sc.topology.kind = TopologySpec::Kind::Torus;
  sc.protocol.duty_cycling = false;
  sc.horizon_periods = 10;
  const RunResult r = run(sc);
  CHECK(r.counters.messages_emitted > 0);
  CHECK(r.counters.arrival_attempts == 4 * r.counters.messages_emitted);
  CHECK(r.counters.dropped_asleep == 0);
}

TEST_CASE("two nodes settle into the steady state") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioConfig sc = pair_scenario();
    sc.seed = seed;
    const RunResult r = run(sc);
    for (const auto& [id, st] : r.final_states) CHECK(st.mode == Mode::SteadyDutyCycled);
    CHECK(r.series.rows().back().dphi_circular <= sc.protocol.epsilon);
    CHECK(r.flap_counts.at(0) == 0);
    CHECK(mode_at(r, 0, 0) == Mode::Initialization);
  }
}

TEST_CASE("steady nodes are awake for twice epsilon") {
  ScenarioConfig sc = pair_scenario();
  sc.protocol.epsilon = 0.05;
  sc.protocol.sigma = 0.01;
  const RunResult r = run(sc);
  const auto& last = r.series.rows().back();
  REQUIRE(last.steady_pct == 100.0);
  CHECK(std::abs(last.duty_pct - 10.0) <= 0.02);
}

TEST_CASE("scenario validation reaches the engine") {
  ScenarioConfig sc = pair_scenario();
  sc.initial_phases = {0.1};
  CHECK_THROWS_AS(run(sc), std::invalid_argument);
  sc.initial_phases.clear();
  sc.mac.backoff_max = -3;
  CHECK_THROWS_AS(run(sc), std::invalid_argument);
}
