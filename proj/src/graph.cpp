#include "kcol/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace kcol {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    if (u == v) throw std::invalid_argument("graph: self-loop at vertex " +
                                            std::to_string(u));
    if (u < 0 || v >= n)
      throw std::invalid_argument("graph: edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.adj_.assign(n, {});
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : g.edges_) {
    ++deg[u];
    ++deg[v];
  }
  for (int v = 0; v < n; ++v) g.adj_[v].reserve(deg[v]);
  for (const auto& [u, v] : g.edges_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& list : g.adj_) std::sort(list.begin(), list.end());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& list = degree(u) <= degree(v) ? adj_[u] : adj_[v];
  const int target = degree(u) <= degree(v) ? v : u;
  return std::binary_search(list.begin(), list.end(), target);
}

Graph generate_gnp(int n, double d, RandomStream& stream) {
  if (n < 1) throw std::invalid_argument("generate_gnp: n must be >= 1");
  if (d < 0 || d > n)
    throw std::invalid_argument("generate_gnp: d must lie in [0, n]");

  const double p = d / static_cast<double>(n);
  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * (static_cast<std::uint64_t>(n) - 1) / 2;
  std::vector<Edge> edges;

  if (p >= 1.0) {
    edges.reserve(total);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_edges(n, std::move(edges));
  }
  if (p > 0.0 && total > 0) {
    edges.reserve(static_cast<std::size_t>(p * static_cast<double>(total)) +
                  16);
    const double log1mp = std::log1p(-p);
    // walk pair indices in row-major order: row u covers pairs (u, u+1..n-1)
    std::uint64_t idx = 0;
    int row = 0;
    std::uint64_t row_end = static_cast<std::uint64_t>(n) - 1;
    for (;;) {
      const double u01 = stream.uniform_unit();
      const double skip = std::floor(std::log1p(-u01) / log1mp);
      idx += static_cast<std::uint64_t>(skip);
      if (idx >= total) break;
      while (idx >= row_end) {
        ++row;
        row_end += static_cast<std::uint64_t>(n - 1 - row);
      }
      const std::uint64_t offset =
          idx - (row_end - static_cast<std::uint64_t>(n - 1 - row));
      edges.emplace_back(row, row + 1 + static_cast<int>(offset));
      ++idx;
      if (idx >= total) break;
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

std::optional<int> bfs_distance(const Graph& g, int v, int u, int cap) {
  if (v < 0 || v >= g.n() || u < 0 || u >= g.n())
    throw std::invalid_argument("bfs_distance: vertex id out of range");
  if (v == u) return 0;
  if (cap <= 0) return std::nullopt;

  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue;
  dist[v] = 0;
  queue.push_back(v);
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (dist[a] >= cap) break;
    for (int b : g.neighbours(a)) {
      if (dist[b] != -1) continue;
      dist[b] = dist[a] + 1;
      if (b == u) return dist[b];
      if (dist[b] < cap) queue.push_back(b);
    }
  }
  return std::nullopt;
}

std::optional<int> shortest_cycle_through_edge(const Graph& g, int u, int v,
                                               int cap) {
  if (!g.has_edge(u, v))
    throw std::invalid_argument("shortest_cycle_through_edge: edge not in graph");
  if (cap < 1) return std::nullopt;

  // shortest u-v path avoiding the edge itself
  std::vector<int> dist(g.n(), -1);
  std::deque<int> queue;
  dist[u] = 0;
  queue.push_back(u);
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (dist[a] >= cap - 1) break;
    for (int b : g.neighbours(a)) {
      if (a == u && b == v) continue;
      if (a == v && b == u) continue;
      if (dist[b] != -1) continue;
      dist[b] = dist[a] + 1;
      if (b == v) return dist[b] + 1;
      if (dist[b] < cap - 1) queue.push_back(b);
    }
  }
  return std::nullopt;
}

std::vector<ComponentInfo> components(const Graph& g) {
  std::vector<ComponentInfo> result;
  std::vector<int> label(g.n(), -1);
  std::vector<int> stack;
  for (int start = 0; start < g.n(); ++start) {
    if (label[start] != -1) continue;
    const int id = static_cast<int>(result.size());
    ComponentInfo info;
    label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      info.vertices.push_back(a);
      info.edge_count += g.degree(a);
      for (int b : g.neighbours(a)) {
        if (label[b] == -1) {
          label[b] = id;
          stack.push_back(b);
        }
      }
    }
    info.edge_count /= 2;
    std::sort(info.vertices.begin(), info.vertices.end());
    result.push_back(std::move(info));
  }
  return result;
}

}  // namespace kcol
