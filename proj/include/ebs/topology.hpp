#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebs {

using NodeId = std::uint32_t;

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Network graph G(D, L). `neighbors(i)` is N_i, the set of nodes whose
/// broadcasts node i can hear; `listeners(i)` is the set of nodes that hear i.
/// For undirected graphs the two coincide.
class Topology {
 public:
  explicit Topology(bool directed = false) : directed_(directed) {}

  void add_node(NodeId id);
  /// Undirected: links u and v both ways. Directed: v hears u.
  void add_edge(NodeId u, NodeId v);
  void remove_node(NodeId id);

  bool contains(NodeId id) const { return adjacency_.contains(id); }
  std::size_t size() const { return adjacency_.size(); }
  bool directed() const { return directed_; }

  std::vector<NodeId> node_ids() const;
  const std::vector<NodeId>& neighbors(NodeId id) const;
  const std::vector<NodeId>& listeners(NodeId id) const;
  std::size_t degree(NodeId id) const { return neighbors(id).size(); }

  /// Number of links |L| (each undirected link counted once).
  std::size_t edge_count() const;
  double average_degree() const;
  std::size_t max_degree() const;
  /// Weak connectivity.
  bool is_connected() const;
  std::map<std::size_t, std::size_t> degree_histogram() const;

  bool operator==(const Topology&) const = default;

 private:
  struct Links {
    std::vector<NodeId> in;   // sorted
    std::vector<NodeId> out;  // sorted
    bool operator==(const Links&) const = default;
  };

  const Links& links(NodeId id) const;

  bool directed_;
  std::map<NodeId, Links> adjacency_;
};

/// Four-nearest-neighbour grid; a torus when `wraparound` is set.
Topology make_regular_grid(int rows, int cols, bool wraparound);
Topology make_complete(int n);
/// n nodes placed uniformly in the unit square, linked when closer than
/// `radius`. Pure function of its arguments.
Topology make_random_geometric(int n, double radius, std::uint64_t seed);
/// Bisects the radius so the generated graph's average degree is as close
/// as possible to `target_degree`.
double tune_radius_for_degree(int n, double target_degree, std::uint64_t seed);

/// Edge-list text: one "u v" pair per line, '#' starts a comment line.
Topology parse_topology(std::istream& in, const std::string& source_name = "<input>",
                        bool directed = false);
Topology load_topology(const std::filesystem::path& path, bool directed = false);

/// Non-fatal observations (disconnected graph, isolated nodes).
std::vector<std::string> topology_warnings(const Topology& topology);

}  // namespace ebs
