#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcol/base_sampler.hpp"
#include "kcol/schedule.hpp"
#include "kcol/switching.hpp"

namespace kcol {

struct RunConfig {
  int k = 3;
  std::uint64_t seed = 0;
  StepMode mode = StepMode::retry;
  std::optional<int> L;  // threshold override; otherwise derived from n, d
  int c_max = 2;
  int workers = 1;
  bool keep_step_records = true;
};

struct StepRecord {
  int i = 0;
  bool bad = false;
  std::optional<int> q;
  std::int64_t component_size = 0;
  bool resolved = true;
  std::vector<int> component;  // stored only below the size cap
};

struct RunLog {
  int r = 0;
  int bad_count = 0;
  int unresolved_count = 0;
  int palette_exhausted = 0;
  std::vector<StepRecord> steps;
  std::vector<Edge> unresolved_edges;
  std::uint64_t random_bits_base = 0;
  std::uint64_t random_bits_steps = 0;
  std::uint64_t random_bits_consumed = 0;  // base + steps
  double seconds_schedule = 0;
  double seconds_base = 0;
  double seconds_steps = 0;
  int L = 0;
  double d_hat = 0;    // 2|E|/n of the input graph
  double epsilon = 0;  // k / d_hat - 2
  std::vector<std::string> warnings;
};

// The full restoration pipeline: build the deletion schedule, colour the
// base graph exactly uniformly, then restore edges one step at a time.
// Deterministic given (g, cfg).
std::pair<Colouring, RunLog> run(const Graph& g, const RunConfig& cfg);

// Same, with a prebuilt schedule (shared across the runs of a batch).
std::pair<Colouring, RunLog> run_with_schedule(const Graph& g,
                                               const DeletionSchedule& s,
                                               const RunConfig& cfg,
                                               std::uint64_t run_index);

struct AggregateLog {
  std::uint64_t runs = 0;
  std::uint64_t steps_total = 0;
  std::uint64_t bad_total = 0;
  std::uint64_t unresolved_total = 0;
  std::uint64_t palette_exhausted_total = 0;
  std::uint64_t random_bits_total = 0;
  double seconds_total = 0;
  int L = 0;
};

// m independent runs, run i drawing from the substream (cfg.seed, run i).
// Output order is by run index regardless of worker count.
std::pair<std::vector<Colouring>, AggregateLog> sample_many(
    const Graph& g, const RunConfig& cfg, std::uint64_t m,
    std::vector<RunLog>* per_run_logs = nullptr);

struct BenchEntry {
  int n = 0;
  std::vector<double> seconds;  // one entry per seed
  double median_seconds = 0;
};

struct BenchReport {
  std::vector<BenchEntry> entries;
  std::optional<double> fitted_exponent;  // slope of log t over log n
};

// Times whole pipeline runs (schedule + base + steps) on G(n, d/n)
// instances of increasing size and fits time ~ n^p.
BenchReport bench(const std::vector<int>& sizes, double d, int k, int seeds,
                  std::uint64_t seed, StepMode mode);

}  // namespace kcol
