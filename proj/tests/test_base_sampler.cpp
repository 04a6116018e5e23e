#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "kcol/base_sampler.hpp"
#include "kcol/verify.hpp"

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

std::vector<int> all_vertices(const Graph& g) {
  std::vector<int> v(g.n());
  for (int i = 0; i < g.n(); ++i) v[i] = i;
  return v;
}

// random tree on n vertices from a Pruefer-style attachment
Graph random_tree(int n, RandomStream& s) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v)
    e.emplace_back(static_cast<int>(s.uniform_below(v)), v);
  return Graph::from_edges(n, std::move(e));
}

}  // namespace

TEST_SUITE("base_sampler") {

TEST_CASE("count_tree_colourings basic counts") {
  const Graph one = Graph::from_edges(1, {});
  CHECK(count_tree_colourings(one, {0}, {}, 3).first == 3);

  const Graph p3 = path_graph(3);
  CHECK(count_tree_colourings(p3, all_vertices(p3), {}, 3).first == 12);

  const Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(count_tree_colourings(star, all_vertices(star), {}, 3).first == 48);
}

TEST_CASE("count_tree_colourings respects lists") {
  const Graph p2 = path_graph(2);
  // vertex 0 pinned to colour 0, vertex 1 free among 3
  const auto [total, table] =
      count_tree_colourings(p2, {0, 1}, {{0}, {}}, 3);
  CHECK(total == 2);
  (void)table;
}

TEST_CASE("count_tree_colourings rejects cyclic and disconnected input") {
  const Graph c3 = cycle_graph(3);
  CHECK_THROWS_AS(count_tree_colourings(c3, all_vertices(c3), {}, 3),
                  std::invalid_argument);
  const Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(count_tree_colourings(two, all_vertices(two), {}, 3),
                  std::invalid_argument);
}

TEST_CASE("tree counts match brute force on random trees with lists") {
  RandomStream rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(9));  // up to 10
    const int k = 2 + static_cast<int>(rng.uniform_below(3));  // up to 4
    Graph t = random_tree(n, rng);
    // random lists: empty (= full) or a random nonempty subset
    std::vector<std::vector<int>> lists(n);
    for (int v = 0; v < n; ++v) {
      if (rng.uniform_below(2) == 0) continue;
      for (int c = 0; c < k; ++c)
        if (rng.uniform_below(2) == 0) lists[v].push_back(c);
      if (lists[v].empty()) lists[v].push_back(static_cast<int>(
          rng.uniform_below(k)));
    }
    // brute force over all k^n assignments
    std::int64_t brute = 0;
    std::vector<int> colour(n, 0);
    for (;;) {
      bool ok = true;
      for (const auto& [a, b] : t.edges())
        if (colour[a] == colour[b]) ok = false;
      for (int v = 0; v < n && ok; ++v)
        if (!lists[v].empty() &&
            std::find(lists[v].begin(), lists[v].end(), colour[v]) ==
                lists[v].end())
          ok = false;
      if (ok) ++brute;
      int pos = n - 1;
      while (pos >= 0 && colour[pos] == k - 1) colour[pos--] = 0;
      if (pos < 0) break;
      ++colour[pos];
    }
    CHECK(count_tree_colourings(t, all_vertices(t), lists, k).first == brute);
  }
}

TEST_CASE("sample_tree_colouring is uniform on a single vertex") {
  const Graph one = Graph::from_edges(1, {});
  const auto [total, table] = count_tree_colourings(one, {0}, {}, 3);
  REQUIRE(total == 3);
  RandomStream s(3);
  const int m = 300000;
  int freq[3] = {0, 0, 0};
  for (int i = 0; i < m; ++i) ++freq[sample_tree_colouring(table, s).colours[0]];
  const double sd = std::sqrt((1.0 / 3) * (2.0 / 3) / m);
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs(freq[c] / static_cast<double>(m) - 1.0 / 3) < 4 * sd);
}

TEST_CASE("sample_tree_colouring matches the exact uniform law on P3") {
  const Graph p3 = path_graph(3);
  const auto [total, table] =
      count_tree_colourings(p3, all_vertices(p3), {}, 3);
  REQUIRE(total == 12);
  RandomStream s(11);
  const int m = 1200000;
  std::map<std::uint64_t, int> freq;
  for (int i = 0; i < m; ++i) {
    const auto cc = sample_tree_colouring(table, s);
    std::vector<int> colour(3);
    for (std::size_t j = 0; j < cc.vertices.size(); ++j)
      colour[cc.vertices[j]] = cc.colours[j];
    ++freq[encode_colouring(colour, 3)];
  }
  CHECK(freq.size() == 12);
  const double p = 1.0 / 12;
  const double sd = std::sqrt(p * (1 - p) / m);
  for (const auto& [code, count] : freq)
    CHECK(std::abs(count / static_cast<double>(m) - p) < 4 * sd);
}

TEST_CASE("two-vertex tree with two colours splits evenly") {
  const Graph p2 = path_graph(2);
  const auto [total, table] =
      count_tree_colourings(p2, all_vertices(p2), {}, 2);
  REQUIRE(total == 2);
  RandomStream s(5);
  int first = 0;
  const int m = 100000;
  for (int i = 0; i < m; ++i)
    if (sample_tree_colouring(table, s).colours[0] == 0) ++first;
  CHECK(std::abs(first / static_cast<double>(m) - 0.5) <
        4 * std::sqrt(0.25 / m));
}

TEST_CASE("uncolourable trees raise") {
  const Graph p2 = path_graph(2);
  const auto [total, table] =
      count_tree_colourings(p2, {0, 1}, {{0}, {0}}, 2);
  CHECK(total == 0);
  RandomStream s(1);
  CHECK_THROWS_AS(sample_tree_colouring(table, s), uncolourable_error);
}

TEST_CASE("component count matches the cycle identity") {
  for (int l = 3; l <= 10; ++l) {
    const Graph c = cycle_graph(l);
    for (int k = 2; k <= 5; ++k) {
      const BigInt expect =
          pow(BigInt(k - 1), static_cast<unsigned>(l)) +
          ((l % 2 == 0) ? BigInt(k - 1) : BigInt(-(k - 1)));
      CHECK(component_colouring_count(c, all_vertices(c), k, 2) == expect);
    }
  }
}

TEST_CASE("C4 with k=3 has 18 colourings sampled uniformly") {
  const Graph c4 = cycle_graph(4);
  CHECK(component_colouring_count(c4, all_vertices(c4), 3, 2) == 18);

  RandomStream s(17);
  const int m = 1800000;
  std::map<std::uint64_t, int> freq;
  for (int i = 0; i < m; ++i) {
    const auto cc = sample_component_colouring(c4, all_vertices(c4), 3, s, 2);
    std::vector<int> colour(4);
    for (std::size_t j = 0; j < cc.vertices.size(); ++j)
      colour[cc.vertices[j]] = cc.colours[j];
    ++freq[encode_colouring(colour, 3)];
  }
  CHECK(freq.size() == 18);
  const double p = 1.0 / 18;
  const double sd = std::sqrt(p * (1 - p) / m);
  for (const auto& [code, count] : freq)
    CHECK(std::abs(count / static_cast<double>(m) - p) < 4 * sd);
}

TEST_CASE("component sampler on a tree matches the table sampler's law") {
  // same exact distribution (uniform), checked by full index enumeration
  RandomStream rng(123);
  const Graph t = random_tree(7, rng);
  const auto dist = component_sampler_distribution(t, all_vertices(t), 3, 2);
  const auto proper = enumerate_proper(t, 3);
  CHECK(tv_distance(dist, uniform_over(proper, t.n(), 3)) == 0);
}

TEST_CASE("odd cycle with two colours is uncolourable") {
  const Graph c3 = cycle_graph(3);
  RandomStream s(1);
  CHECK_THROWS_AS(sample_component_colouring(c3, all_vertices(c3), 2, s, 2),
                  uncolourable_error);
}

TEST_CASE("cyclomatic cap raises too_cyclic") {
  const Graph k4 = Graph::from_edges(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  RandomStream s(1);
  CHECK_THROWS_AS(sample_component_colouring(k4, all_vertices(k4), 5, s, 2),
                  too_cyclic_error);
  // beta = 3 within a cap of 3 works
  CHECK(component_colouring_count(k4, all_vertices(k4), 5, 3) ==
        5 * 4 * 3 * 2);
}

TEST_CASE("sample_base on isolated vertices is uniform over assignments") {
  const Graph iso = Graph::from_edges(3, {});
  const int m = 200000;
  std::map<std::uint64_t, int> freq;
  for (int i = 0; i < m; ++i) {
    RandomStream run = RandomStream(900).substream(Phase::run, i);
    const Colouring c = sample_base(iso, 2, run, 2);
    ++freq[encode_colouring(c.colour, 2)];
  }
  CHECK(freq.size() == 8);
  const double p = 1.0 / 8;
  const double sd = std::sqrt(p * (1 - p) / m);
  for (const auto& [code, count] : freq)
    CHECK(std::abs(count / static_cast<double>(m) - p) < 4 * sd);
}

TEST_CASE("sample_base output is proper and counts multiply per component") {
  const Graph forest = Graph::from_edges(4, {{0, 1}, {2, 3}});
  // 6 colourings per edge component with k=3: 36 total
  const auto dist = sampler_base_distribution(forest, 3, 2);
  CHECK(dist.support.size() == 36);
  CHECK(dist.total_mass() == 1);
  const auto proper = enumerate_proper(forest, 3);
  CHECK(tv_distance(dist, uniform_over(proper, 4, 3)) == 0);

  RandomStream run = RandomStream(4).substream(Phase::run, 0);
  const Colouring c = sample_base(forest, 3, run, 2);
  CHECK(c.proper());
}

TEST_CASE("sample_base identifies the failing component") {
  const Graph g = Graph::from_edges(5, {{0, 1}, {2, 3}, {3, 4}, {2, 4}});
  RandomStream run = RandomStream(8).substream(Phase::run, 0);
  CHECK_THROWS_WITH_AS(sample_base(g, 2, run, 2),
                       doctest::Contains("component at vertex 2"),
                       uncolourable_error);
}

TEST_CASE("sample_base falls back to brute force over the cap") {
  // K4 has cyclomatic number 3 > c_max = 2 but is tiny
  const Graph k4 = Graph::from_edges(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const int m = 120000;
  std::map<std::uint64_t, int> freq;
  for (int i = 0; i < m; ++i) {
    RandomStream run = RandomStream(31).substream(Phase::run, i);
    const Colouring c = sample_base(k4, 4, run, 2);
    CHECK(c.proper());
    ++freq[encode_colouring(c.colour, 4)];
  }
  CHECK(freq.size() == 24);  // 4! proper colourings of K4
  const double p = 1.0 / 24;
  const double sd = std::sqrt(p * (1 - p) / m);
  for (const auto& [code, count] : freq)
    CHECK(std::abs(count / static_cast<double>(m) - p) < 5 * sd);
}

}  // TEST_SUITE
