#include "ebs/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "ebs/random.hpp"

namespace ebs {
namespace {

void insert_sorted(std::vector<NodeId>& v, NodeId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it == v.end() || *it != id) v.insert(it, id);
}

void erase_sorted(std::vector<NodeId>& v, NodeId id) {
  auto it = std::lower_bound(v.begin(), v.end(), id);
  if (it != v.end() && *it == id) v.erase(it);
}

}  // namespace

void Topology::add_node(NodeId id) { adjacency_.try_emplace(id); }

void Topology::add_edge(NodeId u, NodeId v) {
  if (u == v) throw TopologyError("self-loop on node " + std::to_string(u));
  add_node(u);
  add_node(v);
  insert_sorted(adjacency_[u].out, v);
  insert_sorted(adjacency_[v].in, u);
  if (!directed_) {
    insert_sorted(adjacency_[v].out, u);
    insert_sorted(adjacency_[u].in, v);
  }
}

void Topology::remove_node(NodeId id) {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw TopologyError("unknown node " + std::to_string(id));
  for (NodeId peer : it->second.in) erase_sorted(adjacency_[peer].out, id);
  for (NodeId peer : it->second.out) erase_sorted(adjacency_[peer].in, id);
  adjacency_.erase(it);
}

std::vector<NodeId> Topology::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(adjacency_.size());
  for (const auto& [id, _] : adjacency_) ids.push_back(id);
  return ids;
}

const Topology::Links& Topology::links(NodeId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw TopologyError("unknown node " + std::to_string(id));
  return it->second;
}

const std::vector<NodeId>& Topology::neighbors(NodeId id) const { return links(id).in; }
const std::vector<NodeId>& Topology::listeners(NodeId id) const { return links(id).out; }

std::size_t Topology::edge_count() const {
  std::size_t arcs = 0;
  for (const auto& [_, l] : adjacency_) arcs += l.out.size();
  return directed_ ? arcs : arcs / 2;
}

double Topology::average_degree() const {
  if (adjacency_.empty()) return 0.0;
  std::size_t sum = 0;
  for (const auto& [_, l] : adjacency_) sum += l.in.size();
  return static_cast<double>(sum) / static_cast<double>(adjacency_.size());
}

std::size_t Topology::max_degree() const {
  std::size_t best = 0;
  for (const auto& [_, l] : adjacency_) best = std::max(best, l.in.size());
  return best;
}

bool Topology::is_connected() const {
  if (adjacency_.size() <= 1) return true;
  std::set<NodeId> seen{adjacency_.begin()->first};
  std::queue<NodeId> frontier;
  frontier.push(adjacency_.begin()->first);
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop();
    const Links& l = adjacency_.at(cur);
    for (const auto* side : {&l.in, &l.out}) {
      for (NodeId next : *side) {
        if (seen.insert(next).second) frontier.push(next);
      }
    }
  }
  return seen.size() == adjacency_.size();
}

std::map<std::size_t, std::size_t> Topology::degree_histogram() const {
  std::map<std::size_t, std::size_t> hist;
  for (const auto& [_, l] : adjacency_) ++hist[l.in.size()];
  return hist;
}

Topology make_regular_grid(int rows, int cols, bool wraparound) {
  if (rows < 2 || cols < 2) {
    throw TopologyError("grid needs rows >= 2 and cols >= 2, got " + std::to_string(rows) + "x" +
                        std::to_string(cols));
  }
  Topology t;
  auto id = [cols](int r, int c) { return static_cast<NodeId>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      t.add_node(id(r, c));
      if (c + 1 < cols) {
        t.add_edge(id(r, c), id(r, c + 1));
      } else if (wraparound && cols > 2) {
        t.add_edge(id(r, c), id(r, 0));
      }
      if (r + 1 < rows) {
        t.add_edge(id(r, c), id(r + 1, c));
      } else if (wraparound && rows > 2) {
        t.add_edge(id(r, c), id(0, c));
      }
    }
  }
  return t;
}

Topology make_complete(int n) {
  if (n < 1) throw TopologyError("complete graph needs n >= 1");
  Topology t;
  for (int i = 0; i < n; ++i) {
    t.add_node(static_cast<NodeId>(i));
    for (int j = 0; j < i; ++j) t.add_edge(static_cast<NodeId>(j), static_cast<NodeId>(i));
  }
  return t;
}

Topology make_random_geometric(int n, double radius, std::uint64_t seed) {
  if (n < 1) throw TopologyError("random geometric graph needs n >= 1");
  if (!(radius >= 0.0)) throw TopologyError("radius must be non-negative");
  Rng rng(seed, /*stream=*/0x70706f);
  std::vector<std::pair<double, double>> pos(static_cast<std::size_t>(n));
  for (auto& p : pos) {
    p.first = rng.uniform();
    p.second = rng.uniform();
  }
  Topology t;
  const double r2 = radius * radius;
  for (int i = 0; i < n; ++i) {
    t.add_node(static_cast<NodeId>(i));
    for (int j = 0; j < i; ++j) {
      const double dx = pos[i].first - pos[j].first;
      const double dy = pos[i].second - pos[j].second;
      if (dx * dx + dy * dy < r2) t.add_edge(static_cast<NodeId>(j), static_cast<NodeId>(i));
    }
  }
  return t;
}

double tune_radius_for_degree(int n, double target_degree, std::uint64_t seed) {
  if (target_degree < 0.0 || target_degree > n - 1) {
    throw TopologyError("target degree out of range for n=" + std::to_string(n));
  }
  double lo = 0.0;
  double hi = std::sqrt(2.0);
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (make_random_geometric(n, mid, seed).average_degree() < target_degree) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Degree is a step function of the radius; pick the closer side.
  const double d_lo = make_random_geometric(n, lo, seed).average_degree();
  const double d_hi = make_random_geometric(n, hi, seed).average_degree();
  return std::abs(d_lo - target_degree) <= std::abs(d_hi - target_degree) ? lo : hi;
}

Topology parse_topology(std::istream& in, const std::string& source_name, bool directed) {
  Topology t(directed);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw TopologyError(source_name + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string tok_u, tok_v, extra;
    fields >> tok_u >> tok_v;
    if (tok_v.empty()) fail("expected \"u v\", got \"" + line + "\"");
    if (fields >> extra) fail("trailing field \"" + extra + "\"");
    auto parse_id = [&](const std::string& tok) -> NodeId {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        fail("node id must be a non-negative integer, got \"" + tok + "\"");
      }
      unsigned long long v = 0;
      try {
        v = std::stoull(tok);
      } catch (const std::exception&) {
        fail("node id out of range: " + tok);
      }
      if (v > UINT32_MAX) fail("node id out of range: " + tok);
      return static_cast<NodeId>(v);
    };
    const NodeId u = parse_id(tok_u);
    const NodeId v = parse_id(tok_v);
    if (u == v) fail("self-loop on node " + tok_u);
    t.add_edge(u, v);
  }
  if (t.size() == 0) throw TopologyError(source_name + ": no edges");
  return t;
}

Topology load_topology(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw TopologyError("cannot open topology file " + path.string());
  return parse_topology(in, path.string(), directed);
}

std::vector<std::string> topology_warnings(const Topology& topology) {
  std::vector<std::string> out;
  if (!topology.is_connected()) out.emplace_back("topology is disconnected");
  for (NodeId id : topology.node_ids()) {
    if (topology.degree(id) == 0) {
      out.push_back("node " + std::to_string(id) + " has no neighbours and cannot synchronize");
    }
  }
  return out;
}

}  // namespace ebs
