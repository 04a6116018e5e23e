#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kcol/rng.hpp"

namespace kcol {

using Edge = std::pair<int, int>;  // always stored with first < second

// Immutable simple undirected graph on vertex ids 0..n-1.
// Edges are kept sorted lexicographically with u < v; adjacency lists are
// sorted. Construction validates against self-loops and duplicates.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& adjacency() const { return adj_; }
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int u, int v) const;

  bool operator==(const Graph& other) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

// G(n, p) with p = d/n, via geometric skipping over the C(n,2) pair order.
// Equivalent to independent Bernoulli(p) per pair; expected O(n*d) time.
Graph generate_gnp(int n, double d, RandomStream& stream);

// BFS distance from v to u, never exploring beyond depth cap.
// nullopt means "> cap" (unreached within the cap).
std::optional<int> bfs_distance(const Graph& g, int v, int u, int cap);

// Length of the shortest cycle containing edge {u, v}: 1 + dist(u, v) in
// g minus that edge. nullopt when the distance exceeds cap-1 (so any cycle
// would be longer than cap) or no cycle exists.
std::optional<int> shortest_cycle_through_edge(const Graph& g, int u, int v,
                                               int cap);

struct ComponentInfo {
  std::vector<int> vertices;   // sorted
  std::int64_t edge_count = 0;

  std::int64_t cyclomatic() const {
    return edge_count - static_cast<std::int64_t>(vertices.size()) + 1;
  }
};

// Connected components with per-component edge counts, ordered by their
// lowest vertex id.
std::vector<ComponentInfo> components(const Graph& g);

}  // namespace kcol
