#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "kcol/graph.hpp"

using namespace kcol;

namespace {

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(e));
}

// exhaustive shortest cycle through an edge, by DFS path enumeration
int brute_shortest_cycle(const Graph& g, int u, int v) {
  int best = -1;
  std::vector<int> stack{u};
  std::vector<char> used(g.n(), 0);
  used[u] = 1;
  // enumerate simple u-v paths avoiding the direct edge
  std::function<void()> rec = [&]() {
    const int a = stack.back();
    for (int b : g.neighbours(a)) {
      if (a == u && b == v) continue;
      if (b == v) {
        const int len = static_cast<int>(stack.size());
        if (best == -1 || len + 1 < best) best = len + 1;
        continue;
      }
      if (used[b]) continue;
      used[b] = 1;
      stack.push_back(b);
      rec();
      stack.pop_back();
      used[b] = 0;
    }
  };
  rec();
  return best;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("generate_gnp degenerate densities") {
  RandomStream s(1);
  const Graph empty = generate_gnp(4, 0.0, s);
  CHECK(empty.n() == 4);
  CHECK(empty.edge_count() == 0);

  const Graph k3 = generate_gnp(3, 3.0, s);
  CHECK(k3.edge_count() == 3);  // p = 1

  CHECK_THROWS_AS(generate_gnp(10, -1.0, s), std::invalid_argument);
  CHECK_THROWS_AS(generate_gnp(10, 11.0, s), std::invalid_argument);
  CHECK_THROWS_AS(generate_gnp(0, 0.0, s), std::invalid_argument);
}

TEST_CASE("generate_gnp edge count matches binomial moments") {
  const int n = 10000;
  const double d = 5.0;
  const double p = d / n;
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  const int seeds = 100;
  double total = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    RandomStream s = RandomStream(seed).substream(Phase::generation, 0);
    total += static_cast<double>(generate_gnp(n, d, s).edge_count());
  }
  const double mean = total / seeds;
  const double expect = pairs * p;  // 24997.5
  const double sd = std::sqrt(pairs * p * (1 - p) / seeds);
  CHECK(std::abs(mean - expect) < 3 * sd);
}

TEST_CASE("generate_gnp is deterministic per seed") {
  RandomStream a = RandomStream(42).substream(Phase::generation, 0);
  RandomStream b = RandomStream(42).substream(Phase::generation, 0);
  CHECK(generate_gnp(500, 3.0, a) == generate_gnp(500, 3.0, b));
}

TEST_CASE("adjacency is symmetric and consistent with the edge set") {
  RandomStream s = RandomStream(9).substream(Phase::generation, 0);
  const Graph g = generate_gnp(300, 4.0, s);
  std::size_t adj_total = 0;
  for (int v = 0; v < g.n(); ++v) {
    adj_total += g.neighbours(v).size();
    for (int w : g.neighbours(v)) {
      CHECK(g.has_edge(v, w));
      CHECK(g.has_edge(w, v));
    }
  }
  CHECK(adj_total == 2 * g.edge_count());
}

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("shortest_cycle_through_edge small cases") {
  const Graph tri = cycle_graph(3);
  CHECK(shortest_cycle_through_edge(tri, 0, 1, 10) == 3);

  const Graph tree = path_graph(5);
  CHECK_FALSE(shortest_cycle_through_edge(tree, 1, 2, 50).has_value());

  const Graph c5 = cycle_graph(5);
  CHECK(shortest_cycle_through_edge(c5, 0, 1, 10) == 5);
  CHECK_FALSE(shortest_cycle_through_edge(c5, 0, 1, 4).has_value());
  CHECK(shortest_cycle_through_edge(c5, 0, 1, 5) == 5);

  CHECK_THROWS_AS(shortest_cycle_through_edge(tree, 0, 2, 5),
                  std::invalid_argument);
}

TEST_CASE("shortest_cycle_through_edge agrees with exhaustive search") {
  for (int seed = 0; seed < 25; ++seed) {
    RandomStream s = RandomStream(seed).substream(Phase::generation, 1);
    const Graph g = generate_gnp(8, 3.5, s);
    for (const auto& [u, v] : g.edges()) {
      const int brute = brute_shortest_cycle(g, u, v);
      const auto got = shortest_cycle_through_edge(g, u, v, 64);
      if (brute == -1) {
        CHECK_FALSE(got.has_value());
      } else {
        REQUIRE(got.has_value());
        CHECK(*got == brute);
      }
    }
  }
}

TEST_CASE("bfs_distance basics") {
  const Graph p4 = path_graph(4);
  CHECK(bfs_distance(p4, 2, 2, 10) == 0);
  CHECK(bfs_distance(p4, 0, 3, 10) == 3);
  CHECK_FALSE(bfs_distance(p4, 0, 3, 2).has_value());

  const Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(bfs_distance(two, 0, 3, 5).has_value());
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  RandomStream s = RandomStream(5).substream(Phase::generation, 2);
  const Graph g = generate_gnp(40, 3.0, s);
  RandomStream pick(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = static_cast<int>(pick.uniform_below(g.n()));
    const int b = static_cast<int>(pick.uniform_below(g.n()));
    const int c = static_cast<int>(pick.uniform_below(g.n()));
    const auto ab = bfs_distance(g, a, b, g.n());
    const auto ba = bfs_distance(g, b, a, g.n());
    CHECK(ab == ba);
    const auto ac = bfs_distance(g, a, c, g.n());
    const auto cb = bfs_distance(g, c, b, g.n());
    if (ab && ac && cb) CHECK(*ab <= *ac + *cb);
  }
}

TEST_CASE("components census") {
  const Graph empty = Graph::from_edges(3, {});
  auto comps = components(empty);
  CHECK(comps.size() == 3);
  for (const auto& c : comps) CHECK(c.edge_count == 0);

  const Graph c4 = cycle_graph(4);
  comps = components(c4);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].vertices.size() == 4);
  CHECK(comps[0].edge_count == 4);
  CHECK(comps[0].cyclomatic() == 1);

  const Graph tree = Graph::from_edges(
      7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  comps = components(tree);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].cyclomatic() == 0);
}

}  // TEST_SUITE
