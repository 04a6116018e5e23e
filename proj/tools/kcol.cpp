#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcol/io.hpp"
#include "kcol/pipeline.hpp"
#include "kcol/suites.hpp"
#include "kcol/verify.hpp"

namespace {

// exit codes: 0 success / all checks pass, 1 check failure,
//             2 flag error, 3 I/O error

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw kcol::io_error("cannot write " + path);
  return file;
}

int cmd_gen(int n, double d, std::uint64_t seed, const std::string& out) {
  kcol::RandomStream stream =
      kcol::RandomStream(seed).substream(kcol::Phase::generation, 0);
  const kcol::Graph g = kcol::generate_gnp(n, d, stream);
  kcol::save_graph(g, out);
  std::cout << "wrote " << out << ": n=" << g.n() << " m=" << g.edge_count()
            << "\n";
  return 0;
}

int cmd_schedule(const std::string& in, int L_override, double d_hint,
                 const std::string& out) {
  const kcol::Graph g = kcol::load_graph(in);
  int L = L_override;
  if (L == 0) {
    const double d_hat =
        g.n() > 0 ? 2.0 * static_cast<double>(g.edge_count()) / g.n() : 0.0;
    L = d_hat > 1.0 ? kcol::default_threshold(g.n(), d_hat) : 3;
  }
  kcol::DeletionSchedule s = kcol::build_schedule(g, L);
  if (d_hint > 0) s.source_d = d_hint;
  if (!out.empty()) kcol::save_schedule(s, out);

  const kcol::ScheduleReport report = kcol::audit_schedule(s);
  std::cout << "L=" << s.L << " r=" << report.r
            << " max_cyclomatic=" << report.max_component_cyclomatic
            << " census(isolated/tree/unicyclic/other)="
            << report.isolated_vertices << "/" << report.trees << "/"
            << report.unicyclic_short_cycle << "/" << report.other_components
            << "\n";
  if (report.min_pair_distance)
    std::cout << "min_pair_distance=" << *report.min_pair_distance
              << " (cap " << report.distance_cap << ")\n";
  std::cout << "distance_violations=" << report.distance_violations
            << " adjacency_violations=" << report.adjacency_violations
            << " long_cycle_edges_in_base=" << report.long_cycle_edges_in_base
            << "\n";
  if (report.r_bound)
    std::cout << "r_bound=" << *report.r_bound << " within=" <<
        (report.r_within_bound ? "yes" : "NO") << "\n";
  const bool clean = report.distance_violations == 0 &&
                     report.adjacency_violations == 0 &&
                     report.long_cycle_edges_in_base == 0;
  return clean ? 0 : 1;
}

int cmd_sample(const std::string& in, int k, std::uint64_t seed,
               std::uint64_t m, const std::string& mode, int L_override,
               int c_max, int workers, const std::string& out,
               const std::string& log_path) {
  const kcol::Graph g = kcol::load_graph(in);
  kcol::RunConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.mode =
      mode == "faithful" ? kcol::StepMode::faithful : kcol::StepMode::retry;
  if (L_override > 0) cfg.L = L_override;
  cfg.c_max = c_max;
  cfg.workers = workers;
  cfg.keep_step_records = !log_path.empty();

  std::vector<kcol::RunLog> logs;
  auto [colourings, agg] = kcol::sample_many(g, cfg, m, &logs);

  std::ofstream out_file;
  std::ostream& os = open_sink(out_file, out);
  kcol::write_colouring_header(os, g.n(), k, seed);
  for (const auto& c : colourings) kcol::write_colouring_line(os, c);

  if (!log_path.empty()) {
    std::ofstream log_file(log_path, std::ios::binary);
    if (!log_file) throw kcol::io_error("cannot write " + log_path);
    for (const auto& log : logs) kcol::write_step_records(log_file, log);
    kcol::write_run_footer(log_file, agg);
  }
  std::cerr << "runs=" << agg.runs << " steps=" << agg.steps_total
            << " bad=" << agg.bad_total << " unresolved="
            << agg.unresolved_total << " bits=" << agg.random_bits_total
            << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, int max_n, int k,
               const std::string& out) {
  std::vector<int> ks = k == 0 ? kcol::default_suite_colours()
                               : std::vector<int>{k};
  kcol::SuiteResult result;
  if (suite == "base-exact")
    result = kcol::suite_base_exact(ks);
  else if (suite == "step-alpha")
    result = kcol::suite_step_alpha(max_n, ks);
  else if (suite == "pipeline-tv")
    result = kcol::suite_pipeline_tv(ks);
  else if (suite == "bijection")
    result = kcol::suite_bijection(max_n, ks);
  else  // domination (suite names are validated by the parser)
    result = kcol::suite_domination(std::min(max_n, 6), k == 0 ? 4 : k);

  std::ofstream out_file;
  std::ostream& os = open_sink(out_file, out);
  kcol::write_suite_report(os, result);
  return result.all_pass() ? 0 : 1;
}

int cmd_analyze(int n, double d, int k, int trials, int lmax,
                std::uint64_t seed, int workers, const std::string& out) {
  const kcol::PathDecayReport report =
      kcol::path_decay_sim(n, d, k, trials, lmax, seed, workers);
  std::ofstream out_file;
  std::ostream& os = open_sink(out_file, out);
  kcol::write_decay_csv(os, report);
  if (report.ratio) {
    std::cerr << "fitted_ratio=" << *report.ratio;
    if (report.ratio_lo && report.ratio_hi)
      std::cerr << " ci95=[" << *report.ratio_lo << "," << *report.ratio_hi
                << "]";
    std::cerr << "\n";
  }
  return 0;
}

int cmd_bench(const std::string& sizes_csv, double d, int k, int seeds,
              std::uint64_t seed, const std::string& mode) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_csv);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      sizes.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bench: bad size '" + tok + "'");
    }
  }
  const kcol::BenchReport report = kcol::bench(
      sizes, d, k, seeds, seed,
      mode == "faithful" ? kcol::StepMode::faithful : kcol::StepMode::retry);
  for (const auto& e : report.entries) {
    std::cout << "n=" << e.n << " median_s=" << e.median_seconds << " runs=[";
    for (std::size_t i = 0; i < e.seconds.size(); ++i)
      std::cout << (i ? "," : "") << e.seconds[i];
    std::cout << "]\n";
  }
  if (report.fitted_exponent)
    std::cout << "fitted_exponent=" << *report.fitted_exponent << "\n";
  else
    std::cout << "fitted_exponent=n/a (single size)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random k-colouring of sparse graphs via edge deletion, exact "
               "base sampling and colour switching"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a G(n, d/n) graph file");
  int gen_n = 0;
  double gen_d = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_d, "expected degree")->required()
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path")->required();

  // schedule
  auto* sched = app.add_subcommand("schedule",
                                   "build and audit a deletion schedule");
  std::string sched_in, sched_out;
  int sched_L = 0;
  double sched_d = 0;
  sched->add_option("--in", sched_in, "graph file")->required();
  sched->add_option("--L", sched_L, "threshold override (>= 3)");
  sched->add_option("--d", sched_d, "expected degree hint for the r bound");
  sched->add_option("--out", sched_out, "schedule output path");

  // sample
  auto* sample = app.add_subcommand("sample", "draw approximate colourings");
  std::string sample_in, sample_mode = "retry", sample_out, sample_log;
  int sample_k = 0, sample_L = 0, sample_cmax = 2, sample_workers = 1;
  std::uint64_t sample_seed = 0, sample_m = 1;
  sample->add_option("--in", sample_in, "graph file")->required();
  sample->add_option("--k", sample_k, "palette size")->required()
      ->check(CLI::Range(3, 1 << 20));
  sample->add_option("--seed", sample_seed, "random seed");
  sample->add_option("--m", sample_m, "number of samples")
      ->check(CLI::PositiveNumber);
  sample->add_option("--mode", sample_mode, "step mode")
      ->check(CLI::IsMember({"faithful", "retry"}));
  sample->add_option("--L", sample_L, "threshold override");
  sample->add_option("--c-max", sample_cmax, "cyclomatic cap");
  sample->add_option("--workers", sample_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  sample->add_option("--out", sample_out, "colouring file (default stdout)");
  sample->add_option("--log", sample_log, "run log file");

  // verify
  auto* verify = app.add_subcommand("verify", "run an exact check suite");
  std::string verify_suite, verify_out;
  int verify_maxn = 8, verify_k = 0;
  verify->add_option("--suite", verify_suite, "suite name")->required()
      ->check(CLI::IsMember({"base-exact", "step-alpha", "pipeline-tv",
                             "bijection", "domination"}));
  verify->add_option("--max-n", verify_maxn, "largest fixture size");
  verify->add_option("--k", verify_k, "palette size (0 = suite default)");
  std::string verify_fixtures = "default";
  verify->add_option("--fixtures", verify_fixtures, "fixture corpus")
      ->check(CLI::IsMember({"default"}));
  verify->add_option("--out", verify_out, "report path (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze",
                                     "disagreement-path decay Monte Carlo");
  int an_n = 0, an_k = 0, an_trials = 0, an_lmax = 0, an_workers = 1;
  double an_d = 0;
  std::uint64_t an_seed = 0;
  std::string an_out;
  analyze->add_option("--n", an_n, "graph size")->required()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--d", an_d, "expected degree")->required();
  analyze->add_option("--k", an_k, "palette size")->required()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--trials", an_trials, "Monte Carlo trials")->required()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--lmax", an_lmax, "maximum path length")->required()
      ->check(CLI::PositiveNumber);
  analyze->add_option("--seed", an_seed, "random seed");
  analyze->add_option("--workers", an_workers, "worker threads")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--out", an_out, "CSV path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "pipeline runtime scaling");
  std::string bench_sizes, bench_mode = "retry";
  double bench_d = 5;
  int bench_k = 12, bench_seeds = 3;
  std::uint64_t bench_seed = 0;
  bench->add_option("--sizes", bench_sizes, "comma-separated ascending sizes")
      ->required();
  bench->add_option("--d", bench_d, "expected degree");
  bench->add_option("--k", bench_k, "palette size");
  bench->add_option("--seeds", bench_seeds, "seeds per size")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--mode", bench_mode, "step mode")
      ->check(CLI::IsMember({"faithful", "retry"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_n, gen_d, gen_seed, gen_out);
    if (sched->parsed())
      return cmd_schedule(sched_in, sched_L, sched_d, sched_out);
    if (sample->parsed())
      return cmd_sample(sample_in, sample_k, sample_seed, sample_m,
                        sample_mode, sample_L, sample_cmax, sample_workers,
                        sample_out, sample_log);
    if (verify->parsed())
      return cmd_verify(verify_suite, verify_maxn, verify_k, verify_out);
    if (analyze->parsed())
      return cmd_analyze(an_n, an_d, an_k, an_trials, an_lmax, an_seed,
                         an_workers, an_out);
    if (bench->parsed())
      return cmd_bench(bench_sizes, bench_d, bench_k, bench_seeds, bench_seed,
                       bench_mode);
  } catch (const kcol::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
