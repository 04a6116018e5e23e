#include <doctest.h>

#include <cmath>
#include <map>

#include "kcol/pipeline.hpp"
#include "kcol/verify.hpp"

using namespace kcol;

namespace {

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(e));
}

const Graph kTree5 = Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}});

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("tree input needs no steps and is exactly uniform") {
  RunConfig cfg;
  cfg.k = 3;
  cfg.seed = 5;
  const auto schedule = build_schedule(kTree5, 3);
  const int m = 100000;
  std::map<std::uint64_t, int> freq;
  bool all_clean = true;
  for (int i = 0; i < m; ++i) {
    auto [col, log] = run_with_schedule(kTree5, schedule, cfg,
                                        static_cast<std::uint64_t>(i));
    all_clean = all_clean && log.r == 0 && col.proper();
    ++freq[encode_colouring(col.colour, 3)];
  }
  CHECK(all_clean);
  const auto proper = enumerate_proper(kTree5, 3);
  CHECK(freq.size() == proper.size());  // 3 * 2^4 = 48
  const double p = 1.0 / static_cast<double>(proper.size());
  const double sd = std::sqrt(p * (1 - p) / m);
  for (const auto& [code, count] : freq)
    CHECK(std::abs(count / static_cast<double>(m) - p) < 4.5 * sd);
}

TEST_CASE("run is deterministic") {
  RandomStream gen = RandomStream(2).substream(Phase::generation, 0);
  const Graph g = generate_gnp(400, 4.0, gen);
  RunConfig cfg;
  cfg.k = 10;
  cfg.seed = 77;
  const auto a = run(g, cfg);
  const auto b = run(g, cfg);
  CHECK(a.first.colour == b.first.colour);
  CHECK(a.second.r == b.second.r);
  CHECK(a.second.bad_count == b.second.bad_count);
  CHECK(a.second.random_bits_consumed == b.second.random_bits_consumed);
}

TEST_CASE("C5 with L=4 runs exactly one step and can go pathological") {
  const Graph c5 = cycle_graph(5);
  RunConfig cfg;
  cfg.k = 3;
  cfg.L = 4;
  cfg.mode = StepMode::faithful;
  const auto schedule = build_schedule(c5, 4);
  REQUIRE(schedule.r() == 1);
  int unresolved_runs = 0;
  const int m = 4000;
  for (int i = 0; i < m; ++i) {
    auto [col, log] =
        run_with_schedule(c5, schedule, cfg, static_cast<std::uint64_t>(i));
    REQUIRE(log.steps.size() == 1);
    if (!log.steps[0].resolved) {
      ++unresolved_runs;
      CHECK_FALSE(col.proper());
      CHECK(col.witness == Edge{0, 1});
    } else {
      CHECK(col.proper());
    }
  }
  // bad base colourings occur and some of them hit the pathological branch
  CHECK(unresolved_runs > 0);
  CHECK(unresolved_runs < m / 2);
}

TEST_CASE("C6 with L=4 and k=3 never goes pathological (parity)") {
  // the deleted pair sits at odd distance 5; a two-colour chain from v
  // would have to end in the other colour, so the component cannot absorb u
  const Graph c6 = cycle_graph(6);
  RunConfig cfg;
  cfg.k = 3;
  cfg.L = 4;
  cfg.mode = StepMode::faithful;
  const auto schedule = build_schedule(c6, 4);
  for (int i = 0; i < 2000; ++i) {
    auto [col, log] =
        run_with_schedule(c6, schedule, cfg, static_cast<std::uint64_t>(i));
    CHECK(log.unresolved_count == 0);
    CHECK(col.proper());
  }
}

TEST_CASE("retry mode yields proper output on random sparse graphs") {
  for (int seed = 0; seed < 10; ++seed) {
    RandomStream gen = RandomStream(seed).substream(Phase::generation, 0);
    const Graph g = generate_gnp(300, 4.0, gen);
    RunConfig cfg;
    cfg.k = 12;
    cfg.seed = seed;
    cfg.mode = StepMode::retry;
    auto [col, log] = run(g, cfg);
    CHECK(col.proper());
    CHECK(log.unresolved_count == 0);
  }
}

TEST_CASE("faithful mode tracks witness edges exactly") {
  RandomStream gen = RandomStream(3).substream(Phase::generation, 0);
  const Graph g = generate_gnp(300, 4.0, gen);
  RunConfig cfg;
  cfg.k = 5;  // small palette so unresolved steps actually happen
  cfg.mode = StepMode::faithful;
  for (int seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    auto [col, log] = run(g, cfg);
    // witnesses are exactly the unresolved pairs, and they never heal
    std::vector<Edge> monochrome;
    for (const auto& [a, b] : g.edges())
      if (col.colour[a] == col.colour[b])
        monochrome.emplace_back(a, b);
    auto unresolved = log.unresolved_edges;
    std::sort(unresolved.begin(), unresolved.end());
    CHECK(monochrome.size() == static_cast<std::size_t>(log.unresolved_count));
    CHECK(monochrome == unresolved);
    CHECK(col.proper() == (log.unresolved_count == 0));
  }
}

TEST_CASE("sample_many with m=1 equals run") {
  RandomStream gen = RandomStream(11).substream(Phase::generation, 0);
  const Graph g = generate_gnp(200, 3.0, gen);
  RunConfig cfg;
  cfg.k = 8;
  cfg.seed = 3;
  auto [single, log] = run(g, cfg);
  auto [many, agg] = sample_many(g, cfg, 1);
  REQUIRE(many.size() == 1);
  CHECK(many[0].colour == single.colour);
  CHECK(agg.runs == 1);
}

TEST_CASE("sample_many ordering is independent of the worker count") {
  RandomStream gen = RandomStream(12).substream(Phase::generation, 0);
  const Graph g = generate_gnp(150, 3.0, gen);
  RunConfig cfg;
  cfg.k = 8;
  cfg.seed = 9;
  cfg.workers = 1;
  auto [a, agg_a] = sample_many(g, cfg, 24);
  cfg.workers = 3;
  auto [b, agg_b] = sample_many(g, cfg, 24);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].colour == b[i].colour);
  CHECK(agg_a.bad_total == agg_b.bad_total);
}

TEST_CASE("sample_many surfaces worker failures with the run index") {
  // K3 is 2-uncolourable... k >= 3 is enforced, so use a K4 component with
  // k=3: brute-force fallback finds no proper colouring
  const Graph k4 = Graph::from_edges(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  RunConfig cfg;
  cfg.k = 3;
  cfg.L = 100;  // keep the schedule empty so K4 itself is the base
  cfg.workers = 2;
  CHECK_THROWS_WITH_AS(sample_many(k4, cfg, 8),
                       doctest::Contains("run 0"), std::runtime_error);
}

TEST_CASE("a small palette triggers the degradation warning") {
  RandomStream gen = RandomStream(13).substream(Phase::generation, 0);
  const Graph g = generate_gnp(200, 4.0, gen);
  RunConfig cfg;
  cfg.k = 3;
  auto [col, log] = run(g, cfg);
  CHECK(!log.warnings.empty());

  cfg.k = 12;
  auto [col2, log2] = run(g, cfg);
  CHECK(log2.warnings.empty());
  CHECK(log2.epsilon > 0);
}

TEST_CASE("k below 3 is rejected") {
  RunConfig cfg;
  cfg.k = 2;
  CHECK_THROWS_AS(run(kTree5, cfg), std::invalid_argument);
}

TEST_CASE("bench validates sizes and fits an exponent") {
  CHECK_THROWS_AS(bench({200, 100}, 3.0, 6, 1, 0, StepMode::retry),
                  std::invalid_argument);
  CHECK_THROWS_AS(bench({}, 3.0, 6, 1, 0, StepMode::retry),
                  std::invalid_argument);
  const auto single = bench({150}, 3.0, 6, 2, 0, StepMode::retry);
  CHECK_FALSE(single.fitted_exponent.has_value());
  const auto multi = bench({100, 200, 400}, 3.0, 6, 1, 0, StepMode::retry);
  CHECK(multi.fitted_exponent.has_value());
}

TEST_CASE("random bits scale with n at fixed d and k") {
  // coarse sanity at unit-test scale; the full claim is acceptance work
  std::vector<double> per_vertex;
  for (int n : {500, 2000}) {
    RandomStream gen = RandomStream(21).substream(Phase::generation, n);
    const Graph g = generate_gnp(n, 5.0, gen);
    RunConfig cfg;
    cfg.k = 12;
    cfg.seed = 2;
    auto [col, log] = run(g, cfg);
    per_vertex.push_back(static_cast<double>(log.random_bits_consumed) / n);
  }
  CHECK(per_vertex[1] < 3.0 * per_vertex[0]);
}

}  // TEST_SUITE
