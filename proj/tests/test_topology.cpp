#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ebs/random.hpp"
#include "ebs/topology.hpp"

using namespace ebs;

namespace {

std::size_t degree_sum(const Topology& t) {
  std::size_t s = 0;
  for (NodeId id : t.node_ids()) s += t.degree(id);
  return s;
}

}  // namespace

TEST_CASE("regular grids") {
  const Topology torus = make_regular_grid(5, 5, true);
  CHECK(torus.size() == 25);
  for (NodeId id : torus.node_ids()) CHECK(torus.degree(id) == 4);
  CHECK(torus.edge_count() == 50);

  const Topology small = make_regular_grid(2, 2, false);
  CHECK(small.size() == 4);
  for (NodeId id : small.node_ids()) CHECK(small.degree(id) == 2);

  CHECK(make_regular_grid(3, 3, true).degree_histogram() == std::map<std::size_t, std::size_t>{{4, 9}});
  CHECK(make_regular_grid(3, 3, false).degree_histogram() ==
        std::map<std::size_t, std::size_t>{{2, 4}, {3, 4}, {4, 1}});

  CHECK_THROWS_AS(make_regular_grid(1, 5, true), TopologyError);
  CHECK_THROWS_AS(make_regular_grid(5, 0, false), TopologyError);
}

TEST_CASE("complete graph") {
  const Topology k3 = make_complete(3);
  for (NodeId id : k3.node_ids()) CHECK(k3.degree(id) == 2);
  CHECK(make_complete(1).size() == 1);
  CHECK(make_complete(1).max_degree() == 0);
  CHECK_THROWS_AS(make_complete(0), TopologyError);
}

TEST_CASE("random geometric graphs") {
  const Topology a = make_random_geometric(87, 0.3, 11);
  const Topology b = make_random_geometric(87, 0.3, 11);
  const Topology c = make_random_geometric(87, 0.3, 12);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(degree_sum(a) == 2 * a.edge_count());
  CHECK(make_random_geometric(10, 0.0, 1).edge_count() == 0);
  CHECK(make_random_geometric(10, 2.0, 1).edge_count() == 45);

  SUBCASE("radius tuned to a target degree") {
    const double r = tune_radius_for_degree(87, 20.0, 7);
    const double avg = make_random_geometric(87, r, 7).average_degree();
    // Oracle: the average degree is 2|L|/n, computed here from the graph.
    const Topology g = make_random_geometric(87, r, 7);
    CHECK(avg == doctest::Approx(2.0 * g.edge_count() / 87.0));
    CHECK(std::abs(avg - 20.0) < 0.5);
    CHECK_THROWS_AS(tune_radius_for_degree(10, 12.0, 1), TopologyError);
  }
}

TEST_CASE("edges, removal and direction") {
  Topology t;
  t.add_edge(0, 1);
  t.add_edge(1, 2);
  CHECK_THROWS_AS(t.add_edge(3, 3), TopologyError);
  CHECK(t.neighbors(1) == std::vector<NodeId>{0, 2});
  t.remove_node(1);
  CHECK(t.degree(0) == 0);
  CHECK(t.degree(2) == 0);
  CHECK_THROWS_AS(t.remove_node(1), TopologyError);
  CHECK_THROWS_AS(t.neighbors(9), TopologyError);

  Topology d(true);
  d.add_edge(0, 1);
  CHECK(d.neighbors(1) == std::vector<NodeId>{0});
  CHECK(d.neighbors(0).empty());
  CHECK(d.listeners(0) == std::vector<NodeId>{1});
  CHECK(d.is_connected());
}

TEST_CASE("edge-list parsing") {
  std::istringstream p3("0 1\n1 2\n");
  const Topology t = parse_topology(p3);
  CHECK(t.size() == 3);
  CHECK(t.degree(1) == 2);
  CHECK(t.degree(0) == 1);

  std::istringstream comments("# header\n\n  0 1\r\n# 5 6\n");
  CHECK(parse_topology(comments).size() == 2);

  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_topology(in, "net.txt");
    } catch (const TopologyError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("0 1\n2\n") == "net.txt:2: expected \"u v\", got \"2\"");
  CHECK(error_of("0 1\n1 1\n") == "net.txt:2: self-loop on node 1");
  CHECK(error_of("0 x\n").rfind("net.txt:1: node id must be", 0) == 0);
  CHECK(error_of("0 1 2\n").rfind("net.txt:1: trailing field", 0) == 0);
  CHECK(error_of("0 -1\n").rfind("net.txt:1:", 0) == 0);
  CHECK(error_of("# nothing\n") == "net.txt: no edges");

  SUBCASE("from a file") {
    const auto path = std::filesystem::temp_directory_path() / "ebs_topology_test.txt";
    {
      std::ofstream out(path);
      out << "0 1\n1 2\n2 0\n";
    }
    CHECK(load_topology(path).edge_count() == 3);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_topology(path), TopologyError);
  }
}

TEST_CASE("warnings for disconnected graphs") {
  Topology t;
  t.add_edge(0, 1);
  CHECK(topology_warnings(t).empty());
  t.add_node(5);
  const auto w = topology_warnings(t);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == "topology is disconnected");
  CHECK(w[1] == "node 5 has no neighbours and cannot synchronize");
}
