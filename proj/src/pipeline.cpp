#include "kcol/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace kcol {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int resolve_threshold(const Graph& g, const RunConfig& cfg, RunLog& log) {
  if (cfg.L) {
    if (*cfg.L < 3) throw std::invalid_argument("run: L override must be >= 3");
    return *cfg.L;
  }
  if (log.d_hat > 1.0) return default_threshold(g.n(), log.d_hat);
  // too sparse for the formula; any threshold works on an (almost) acyclic
  // graph, so use the floor
  return 3;
}

}  // namespace

std::pair<Colouring, RunLog> run_with_schedule(const Graph& g,
                                               const DeletionSchedule& s,
                                               const RunConfig& cfg,
                                               std::uint64_t run_index) {
  if (cfg.k < 3) throw std::invalid_argument("run: k must be >= 3");

  RunLog log;
  log.L = s.L;
  log.r = s.r();
  log.d_hat = g.n() > 0
                  ? 2.0 * static_cast<double>(g.edge_count()) / g.n()
                  : 0.0;
  log.epsilon = log.d_hat > 0 ? static_cast<double>(cfg.k) / log.d_hat - 2.0
                              : 0.0;
  if (log.d_hat > 0 && cfg.k < 2.01 * log.d_hat)
    log.warnings.push_back("k below (2+0.01)*d; accuracy guarantees degrade");

  const RandomStream run_stream =
      RandomStream(cfg.seed).substream(Phase::run, run_index);

  auto t0 = std::chrono::steady_clock::now();
  Colouring y = sample_base(s.base, cfg.k, run_stream, cfg.c_max,
                            &log.random_bits_base);
  log.seconds_base = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<int>> adj = s.base.adjacency();
  SwitchScratch scratch;
  if (cfg.keep_step_records) log.steps.reserve(s.deletions.size());
  for (int i = 0; i < s.r(); ++i) {
    const auto [v, u] = s.deletions[i];
    RandomStream step_stream =
        run_stream.substream(Phase::step, static_cast<std::uint64_t>(i));
    StepOutcome out =
        step_on(adj, v, u, std::move(y), step_stream, cfg.mode, &scratch);
    y = std::move(out.colouring);
    log.random_bits_steps += step_stream.bits_consumed();

    if (out.was_bad) {
      ++log.bad_count;
      if (!out.resolved) {
        ++log.unresolved_count;
        log.unresolved_edges.emplace_back(std::min(v, u), std::max(v, u));
        if (cfg.mode == StepMode::retry) ++log.palette_exhausted;
      }
    }
    if (cfg.keep_step_records) {
      StepRecord rec;
      rec.i = i;
      rec.bad = out.was_bad;
      rec.q = out.chosen_q;
      rec.component_size = static_cast<std::int64_t>(out.component_size);
      rec.resolved = out.resolved;
      rec.component = std::move(out.component_vertices);
      log.steps.push_back(std::move(rec));
    }
    adj[v].push_back(u);
    adj[u].push_back(v);
  }
  log.seconds_steps = seconds_since(t0);
  log.random_bits_consumed = log.random_bits_base + log.random_bits_steps;

  refresh_status(g, y);
  return {std::move(y), std::move(log)};
}

std::pair<Colouring, RunLog> run(const Graph& g, const RunConfig& cfg) {
  RunLog probe;
  probe.d_hat =
      g.n() > 0 ? 2.0 * static_cast<double>(g.edge_count()) / g.n() : 0.0;
  const int L = resolve_threshold(g, cfg, probe);

  const auto t0 = std::chrono::steady_clock::now();
  DeletionSchedule schedule = build_schedule(g, L);
  const double schedule_seconds = seconds_since(t0);

  auto [colouring, log] = run_with_schedule(g, schedule, cfg, 0);
  log.seconds_schedule = schedule_seconds;
  return {std::move(colouring), std::move(log)};
}

std::pair<std::vector<Colouring>, AggregateLog> sample_many(
    const Graph& g, const RunConfig& cfg, std::uint64_t m,
    std::vector<RunLog>* per_run_logs) {
  if (m < 1) throw std::invalid_argument("sample_many: m must be >= 1");

  RunLog probe;
  probe.d_hat =
      g.n() > 0 ? 2.0 * static_cast<double>(g.edge_count()) / g.n() : 0.0;
  const int L = resolve_threshold(g, cfg, probe);

  const auto t0 = std::chrono::steady_clock::now();
  const DeletionSchedule schedule = build_schedule(g, L);

  RunConfig per_run_cfg = cfg;
  per_run_cfg.keep_step_records = cfg.keep_step_records && m == 1;

  std::vector<Colouring> colourings(m);
  std::vector<RunLog> logs(m);
  const int workers = std::max(1, cfg.workers);
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::uint64_t failed_run = 0;
  auto work = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      try {
        auto [col, log] = run_with_schedule(g, schedule, per_run_cfg, i);
        colourings[i] = std::move(col);
        logs[i] = std::move(log);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure || i < failed_run) {
          failure = std::current_exception();
          failed_run = i;
        }
        return;
      }
    }
  };
  if (workers == 1 || m == 1) {
    work(0, m);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (m + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
      if (lo >= m) break;
      pool.emplace_back(work, lo, std::min(m, lo + chunk));
    }
    for (auto& t : pool) t.join();
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw std::runtime_error("sample_many: run " +
                               std::to_string(failed_run) +
                               " failed: " + e.what());
    }
  }

  AggregateLog agg;
  agg.runs = m;
  agg.L = schedule.L;
  for (const auto& log : logs) {
    agg.steps_total += static_cast<std::uint64_t>(log.r);
    agg.bad_total += static_cast<std::uint64_t>(log.bad_count);
    agg.unresolved_total += static_cast<std::uint64_t>(log.unresolved_count);
    agg.palette_exhausted_total +=
        static_cast<std::uint64_t>(log.palette_exhausted);
    agg.random_bits_total += log.random_bits_consumed;
  }
  agg.seconds_total = seconds_since(t0);
  if (per_run_logs) *per_run_logs = std::move(logs);
  return {std::move(colourings), agg};
}

BenchReport bench(const std::vector<int>& sizes, double d, int k, int seeds,
                  std::uint64_t seed, StepMode mode) {
  if (sizes.empty()) throw std::invalid_argument("bench: no sizes");
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end())
    throw std::invalid_argument("bench: sizes must be strictly ascending");
  if (seeds < 1) throw std::invalid_argument("bench: seeds must be >= 1");

  BenchReport report;
  const RandomStream root(seed);
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    BenchEntry entry;
    entry.n = sizes[si];
    for (int s = 0; s < seeds; ++s) {
      RandomStream gen = root.substream(
          Phase::generation, si * static_cast<std::uint64_t>(seeds) + s);
      const Graph g = generate_gnp(entry.n, d, gen);
      RunConfig cfg;
      cfg.k = k;
      cfg.seed = seed + static_cast<std::uint64_t>(s);
      cfg.mode = mode;
      cfg.keep_step_records = false;
      const auto t0 = std::chrono::steady_clock::now();
      auto result = run(g, cfg);
      entry.seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count());
      (void)result;
    }
    std::vector<double> sorted = entry.seconds;
    std::sort(sorted.begin(), sorted.end());
    entry.median_seconds = sorted[sorted.size() / 2];
    report.entries.push_back(std::move(entry));
  }

  if (report.entries.size() >= 2) {
    // least-squares slope of log t against log n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(report.entries.size());
    for (const auto& e : report.entries) {
      const double x = std::log(static_cast<double>(e.n));
      const double y = std::log(std::max(e.median_seconds, 1e-9));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    report.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
  return report;
}

}  // namespace kcol
