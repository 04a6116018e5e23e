#include "kcol/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace kcol {

namespace {

Edge canon(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Mutable adjacency used while the schedule is being built / replayed.
struct WorkGraph {
  explicit WorkGraph(const Graph& g) : n(g.n()), adj(g.n()) {
    for (int v = 0; v < n; ++v) adj[v] = g.neighbours(v);
  }
  explicit WorkGraph(int n_) : n(n_), adj(n_) {}

  void remove_edge(int a, int b) {
    auto drop = [](std::vector<int>& list, int x) {
      list.erase(std::lower_bound(list.begin(), list.end(), x));
    };
    drop(adj[a], b);
    drop(adj[b], a);
  }
  void add_edge(int a, int b) {
    auto put = [](std::vector<int>& list, int x) {
      list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    put(adj[a], b);
    put(adj[b], a);
  }

  Graph to_graph() const {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v)
      for (int w : adj[v])
        if (v < w) edges.emplace_back(v, w);
    return Graph::from_edges(n, std::move(edges));
  }

  int n;
  std::vector<std::vector<int>> adj;
};

// Epoch-stamped scratch space so repeated BFS passes avoid O(n) clears.
struct Scratch {
  explicit Scratch(int n) : stamp(n, 0), dist(n, 0) {}
  void begin() { ++epoch; }
  bool seen(int v) const { return stamp[v] == epoch; }
  void mark(int v, int d) {
    stamp[v] = epoch;
    dist[v] = d;
  }
  std::vector<std::uint64_t> stamp;
  std::vector<int> dist;
  std::uint64_t epoch = 0;
};

// Is there a u-v path of length <= max_len avoiding the edge {u, v}?
// (A yes means the edge lies on a cycle of length <= max_len + 1.)
bool path_within(const WorkGraph& g, Scratch& sc, int u, int v, int max_len) {
  if (max_len < 1) return false;
  sc.begin();
  sc.mark(u, 0);
  std::deque<int> queue{u};
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (sc.dist[a] >= max_len) break;
    for (int b : g.adj[a]) {
      if ((a == u && b == v) || (a == v && b == u)) continue;
      if (sc.seen(b)) continue;
      sc.mark(b, sc.dist[a] + 1);
      if (b == v) return true;
      if (sc.dist[b] < max_len) queue.push_back(b);
    }
  }
  return false;
}

// Are u and v still connected once the edge {u, v} is ignored?
// Bidirectional search that stops as soon as either side is exhausted, so a
// bridge costs only the smaller side of the split.
bool connected_without_edge(const WorkGraph& g, int u, int v,
                            std::vector<std::int8_t>& side,
                            std::vector<int>& touched) {
  touched.clear();
  side[u] = 1;
  side[v] = 2;
  touched.push_back(u);
  touched.push_back(v);
  std::deque<int> qa{u}, qb{v};
  bool met = false;
  while (!met && !qa.empty() && !qb.empty()) {
    for (std::deque<int>* q : {&qa, &qb}) {
      if (q->empty()) continue;
      const int a = q->front();
      q->pop_front();
      const std::int8_t mine = side[a];
      for (int b : g.adj[a]) {
        if ((a == u && b == v) || (a == v && b == u)) continue;
        if (side[b] == mine) continue;
        if (side[b] != 0) {
          met = true;
          break;
        }
        side[b] = mine;
        touched.push_back(b);
        q->push_back(b);
      }
      if (met) break;
    }
  }
  for (int x : touched) side[x] = 0;
  return met;
}

}  // namespace

int default_threshold(int n, double d) {
  if (n < 2) throw std::invalid_argument("default_threshold: n must be >= 2");
  if (d <= 1.0)
    throw std::invalid_argument("default_threshold: requires d > 1");
  const double raw = std::log(static_cast<double>(n)) / (9.0 * std::log(d));
  const int ceiled = static_cast<int>(std::ceil(raw));
  return std::max(3, ceiled);
}

DeletionSchedule build_schedule(const Graph& g, int L) {
  if (L < 3) throw std::invalid_argument("build_schedule: L must be >= 3");

  WorkGraph work(g);
  Scratch sc(g.n());
  std::vector<std::int8_t> side(g.n(), 0);
  std::vector<int> touched;

  // Candidate edges in canonical order. An edge leaves the set either
  // permanently (bridge, or deleted) or parked in `dropped_short` until a
  // deletion within distance L can change its shortest containing cycle.
  std::set<Edge> cand(g.edges().begin(), g.edges().end());
  std::set<Edge> dropped_short;
  std::vector<Edge> performed;

  std::deque<int> queue;
  while (!cand.empty()) {
    const Edge e = *cand.begin();
    cand.erase(cand.begin());
    const auto [a, b] = e;

    // cycle of length < L through e?
    if (path_within(work, sc, a, b, L - 2)) {
      dropped_short.insert(e);
      continue;
    }
    // any cycle at all? if not, e is a bridge and stays forever
    if (!connected_without_edge(work, a, b, side, touched)) continue;

    // shortest cycle through e has length >= L: delete
    work.remove_edge(a, b);
    performed.push_back(e);

    if (dropped_short.empty()) continue;
    // a destroyed short cycle through e lies within distance L of its
    // endpoints; wake the parked edges in that ball
    sc.begin();
    queue.clear();
    sc.mark(a, 0);
    sc.mark(b, 0);
    queue.push_back(a);
    queue.push_back(b);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : work.adj[x]) {
        const Edge f = canon(x, y);
        const auto it = dropped_short.find(f);
        if (it != dropped_short.end()) {
          cand.insert(f);
          dropped_short.erase(it);
        }
        if (!sc.seen(y) && sc.dist[x] + 1 <= L) {
          sc.mark(y, sc.dist[x] + 1);
          queue.push_back(y);
        }
      }
    }
  }

  DeletionSchedule schedule;
  schedule.base = work.to_graph();
  schedule.deletions.assign(performed.rbegin(), performed.rend());
  schedule.L = L;
  schedule.source_n = g.n();
  return schedule;
}

namespace {

// Bridges via iterative lowlink DFS (recursion depth can reach n).
std::vector<Edge> find_bridges(const Graph& g) {
  const int n = g.n();
  std::vector<int> disc(n, -1), low(n, 0), parent_edge(n, -1);
  std::vector<Edge> bridges;
  std::vector<std::pair<int, std::size_t>> stack;
  int timer = 0;
  for (int start = 0; start < n; ++start) {
    if (disc[start] != -1) continue;
    stack.emplace_back(start, 0);
    disc[start] = low[start] = timer++;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < g.neighbours(v).size()) {
        const int w = g.neighbours(v)[idx++];
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          parent_edge[w] = v;
          stack.emplace_back(w, 0);
        } else if (w != parent_edge[v]) {
          // back edge; the single tree edge to the parent is skipped
          // (a simple graph cannot repeat it)
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back().first;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridges.push_back(canon(p, v));
        }
      }
    }
  }
  return bridges;
}

// Length of the unique cycle of a unicyclic component (leaf peeling).
int unicyclic_cycle_length(const Graph& g, const ComponentInfo& comp) {
  std::vector<int> deg(comp.vertices.size());
  std::vector<int> local(g.n(), -1);
  for (std::size_t i = 0; i < comp.vertices.size(); ++i)
    local[comp.vertices[i]] = static_cast<int>(i);
  std::vector<int> stack;
  for (std::size_t i = 0; i < comp.vertices.size(); ++i) {
    deg[i] = g.degree(comp.vertices[i]);
    if (deg[i] == 1) stack.push_back(static_cast<int>(i));
  }
  int remaining = static_cast<int>(comp.vertices.size());
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    --remaining;
    for (int w : g.neighbours(comp.vertices[i])) {
      const int j = local[w];
      if (--deg[j] == 1) stack.push_back(j);
    }
    deg[i] = 0;
  }
  return remaining;
}

}  // namespace

ScheduleReport audit_schedule(const DeletionSchedule& s) {
  ScheduleReport report;
  report.r = s.r();
  const Graph& base = s.base;

  for (const auto& comp : components(base)) {
    const auto beta = comp.cyclomatic();
    report.max_component_cyclomatic =
        std::max(report.max_component_cyclomatic, beta);
    if (comp.vertices.size() == 1)
      ++report.isolated_vertices;
    else if (beta == 0)
      ++report.trees;
    else if (beta == 1 && unicyclic_cycle_length(base, comp) < s.L)
      ++report.unicyclic_short_cycle;
    else
      ++report.other_components;
  }

  // no base edge may lie on a cycle of length >= L
  const auto bridges = find_bridges(base);
  std::set<Edge> bridge_set(bridges.begin(), bridges.end());
  for (const auto& e : base.edges()) {
    if (bridge_set.count(e)) continue;
    const auto len = shortest_cycle_through_edge(base, e.first, e.second, s.L);
    if (!len.has_value() || *len >= s.L) ++report.long_cycle_edges_in_base;
  }

  // replay, checking each pair before its edge is restored
  report.distance_cap = std::max(2 * s.L, 16);
  WorkGraph work(base);
  Scratch sc(base.n());
  std::deque<int> queue;
  for (const auto& [v, u] : s.deletions) {
    const bool adjacent =
        std::binary_search(work.adj[v].begin(), work.adj[v].end(), u);
    if (adjacent) ++report.adjacency_violations;

    int dist = report.distance_cap;
    sc.begin();
    sc.mark(v, 0);
    queue.assign(1, v);
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      if (sc.dist[a] >= report.distance_cap) break;
      bool done = false;
      for (int b : work.adj[a]) {
        if (sc.seen(b)) continue;
        sc.mark(b, sc.dist[a] + 1);
        if (b == u) {
          dist = sc.dist[b];
          done = true;
          break;
        }
        queue.push_back(b);
      }
      if (done) break;
    }
    if (dist < s.L - 1) ++report.distance_violations;
    if (!report.min_pair_distance || dist < *report.min_pair_distance)
      report.min_pair_distance = dist;
    if (!adjacent) work.add_edge(v, u);
  }

  if (s.source_d.has_value()) {
    const double n = static_cast<double>(s.source_n);
    report.r_bound = (1.0 + std::pow(n, -1.0 / 3.0)) * (*s.source_d) * n / 2.0;
    report.r_within_bound = static_cast<double>(report.r) <= *report.r_bound;
  }
  return report;
}

bool schedule_replays_to(const DeletionSchedule& s, const Graph& g) {
  std::vector<Edge> edges = s.base.edges();
  edges.insert(edges.end(), s.deletions.begin(), s.deletions.end());
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  return s.base.n() == g.n() && edges == g.edges();
}

}  // namespace kcol
