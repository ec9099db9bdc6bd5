#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebs/core.hpp"
#include "ebs/random.hpp"

using namespace ebs;

TEST_CASE("phase rejects values outside [0, 1]") {
  CHECK_THROWS_AS(Phase(-0.001), std::domain_error);
  CHECK_THROWS_AS(Phase(1.0001), std::domain_error);
  CHECK_THROWS_AS(Phase(std::nan("")), std::domain_error);
  CHECK(Phase(1.0).remaining() == 0.0);
  CHECK(Phase(0.25).remaining() == doctest::Approx(0.75));
}

TEST_CASE("coupling params validate their ranges") {
  CHECK_THROWS(CouplingParams::make(0.0, 0.1));
  CHECK_THROWS(CouplingParams::make(0.51, 0.1));
  CHECK_THROWS(CouplingParams::make(0.1, 0.0));
  CHECK_THROWS(CouplingParams::make(0.1, 1.0));
  CHECK(CouplingParams::make(0.01, 0.005).stable());
  CHECK_FALSE(CouplingParams::make(0.01, 0.02).stable());
  // 0.01 / 0.99 = 0.010101...
  CHECK(CouplingParams::make(0.01, 0.0101).stable());
  CHECK_FALSE(CouplingParams::make(0.01, 0.0102).stable());
}

TEST_CASE("phase advance") {
  const auto p = CouplingParams::make(0.01, 0.01);
  CHECK(phase_advance(Phase(0.5), p).value() == doctest::Approx(0.995));
  CHECK(phase_advance(Phase(0.005), p).value() == 0.005);
  CHECK(phase_advance(Phase(0.995), p).value() == 0.995);
  CHECK(phase_advance(Phase(0.9), CouplingParams::make(0.05, 0.1)).value() == doctest::Approx(0.99));
  // 0.9 >= 1 - 0.2 lies inside the window, so a wide window leaves it alone.
  CHECK(phase_advance(Phase(0.9), CouplingParams::make(0.2, 0.1)).value() == 0.9);

  SUBCASE("window edges are not advanced") {
    CHECK(phase_advance(Phase(0.01), p).value() == 0.01);
    CHECK(phase_advance(Phase(0.99), p).value() == 0.99);
  }
  SUBCASE("never moves backwards") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
      const Phase phi(rng.uniform());
      const auto q = CouplingParams::make(0.01 + 0.4 * rng.uniform(), 0.001 + 0.9 * rng.uniform());
      CHECK(phase_advance(phi, q) >= phi);
    }
  }
  SUBCASE("a stable jump lands inside the firer's window") {
    const auto q = CouplingParams::make(0.05, 0.05);
    for (double phi = 0.051; phi < 0.95; phi += 0.013) {
      const double after = phase_advance(Phase(phi), q).value();
      CHECK(1.0 - after == doctest::Approx(0.05 * (1.0 - phi)));
      CHECK(1.0 - after < 0.05);
    }
  }
}

TEST_CASE("window membership") {
  CHECK(in_setw(Phase(0.0), 0.01));
  CHECK_FALSE(in_setw(Phase(0.5), 0.01));
  CHECK(in_setw(Phase(0.991), 0.01));
  CHECK(in_setw(Phase(0.01), 0.01));
  CHECK(in_setw(Phase(1.0), 0.01));
  CHECK_FALSE(in_setw(Phase(0.0101), 0.01));
}

TEST_CASE("phase distance") {
  CHECK(phase_distance(Phase(0.99), Phase(0.01), PhaseDistance::Literal) == doctest::Approx(0.98));
  CHECK(phase_distance(Phase(0.99), Phase(0.01), PhaseDistance::Circular) == doctest::Approx(0.02));
  CHECK(phase_distance(Phase(0.2), Phase(0.7), PhaseDistance::Circular) == doctest::Approx(0.5));
}

TEST_CASE("average phase difference") {
  Topology pair;
  pair.add_edge(0, 1);
  CHECK(avg_phase_difference({{0, Phase(0.2)}, {1, Phase(0.4)}}, pair, PhaseDistance::Literal) ==
        doctest::Approx(0.2));

  const Topology torus = make_regular_grid(5, 5, true);
  PhaseMap same;
  for (NodeId id : torus.node_ids()) same[id] = Phase(0.37);
  CHECK(avg_phase_difference(same, torus, PhaseDistance::Literal) == 0.0);
  CHECK(avg_phase_difference(same, torus, PhaseDistance::Circular) == 0.0);

  SUBCASE("torus with phases i/25 against a double loop") {
    PhaseMap phases;
    for (NodeId id = 0; id < 25; ++id) phases[id] = Phase(id / 25.0);
    // Oracle: rebuild the torus neighbourhood from coordinates.
    double total = 0.0;
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        const int i = r * 5 + c;
        const int nb[4] = {((r + 1) % 5) * 5 + c, ((r + 4) % 5) * 5 + c, r * 5 + (c + 1) % 5,
                           r * 5 + (c + 4) % 5};
        double sum = 0.0;
        for (int j : nb) {
          const double d = std::abs(i / 25.0 - j / 25.0);
          sum += std::min(d, 1.0 - d);
        }
        total += sum / 4.0;
      }
    }
    CHECK(avg_phase_difference(phases, torus, PhaseDistance::Circular) ==
          doctest::Approx(total / 25.0).epsilon(1e-12));
    CHECK(avg_phase_difference(phases, torus, PhaseDistance::Circular) <= 0.5);
  }

  SUBCASE("isolated node or missing phase is an error") {
    Topology t = pair;
    t.add_node(2);
    CHECK_THROWS_AS(avg_phase_difference({{0, Phase(0.1)}, {1, Phase(0.1)}, {2, Phase(0.1)}}, t,
                                         PhaseDistance::Literal),
                    std::invalid_argument);
    CHECK_THROWS_AS(avg_phase_difference({{0, Phase(0.1)}}, pair, PhaseDistance::Literal),
                    std::invalid_argument);
  }
}

TEST_CASE("average phase advancement") {
  CHECK(avg_phase_advancement({}, 5) == 0.0);
  const std::vector<PhaseJump> one{{Phase(0.5), Phase(0.995)}};
  CHECK(avg_phase_advancement(one, 2) == doctest::Approx(0.2475));
  const std::vector<PhaseJump> two{{Phase(0.5), Phase(0.995)}, {Phase(0.2), Phase(0.9)}};
  CHECK(avg_phase_advancement(two, 4) == doctest::Approx((0.495 + 0.7) / 4));
}
