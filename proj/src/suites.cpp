#include "kcol/suites.hpp"

#include <algorithm>
#include <sstream>

#include "kcol/base_sampler.hpp"
#include "kcol/fixtures.hpp"
#include "kcol/verify.hpp"

namespace kcol {

namespace {

std::string rat(const Rational& r) {
  std::ostringstream os;
  os << numerator(r) << "/" << denominator(r);
  return os.str();
}

}  // namespace

SuiteResult suite_base_exact(const std::vector<int>& ks) {
  SuiteResult result;
  result.suite = "base-exact";
  for (const auto& [name, g] : base_fixture_corpus()) {
    for (int k : ks) {
      for (const auto& comp : components(g)) {
        CheckRecord rec;
        rec.name = name + " comp@" + std::to_string(comp.vertices.front()) +
                   " k=" + std::to_string(k);
        const Graph sub = induced_subgraph(g, comp.vertices);
        const auto proper = enumerate_proper(sub, k);
        const BigInt count =
            component_colouring_count(g, comp.vertices, k, 2);
        if (count != BigInt(proper.size())) {
          rec.pass = false;
          rec.values = "count=" + count.str() +
                       " proper=" + std::to_string(proper.size());
          result.records.push_back(std::move(rec));
          continue;
        }
        // unranking every index must hit every proper colouring exactly once
        std::vector<std::uint64_t> codes;
        codes.reserve(proper.size());
        for_each_component_colouring(
            g, comp.vertices, k, 2,
            [&](const std::vector<int>&, const std::vector<int>& colours) {
              codes.push_back(encode_colouring(colours, k));
            });
        std::sort(codes.begin(), codes.end());
        const bool bijective = codes == proper;
        rec.pass = bijective;
        rec.values = "count=" + count.str() + " tv=" + (bijective ? "0/1" : "");
        if (!bijective) {
          const auto dist = component_sampler_distribution(
              g, comp.vertices, k, 2, 2e7);
          rec.values +=
              rat(tv_distance(dist, uniform_over(proper, sub.n(), k)));
        }
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

namespace {

std::vector<std::pair<int, int>> non_adjacent_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < g.n(); ++v)
    for (int u = v + 1; u < g.n(); ++u)
      if (!g.has_edge(v, u)) pairs.emplace_back(v, u);
  return pairs;
}

}  // namespace

SuiteResult suite_step_alpha(int max_n, const std::vector<int>& ks) {
  SuiteResult result;
  result.suite = "step-alpha";
  for (const auto& [name, g] : fixture_corpus()) {
    if (g.n() > max_n) continue;
    for (int k : ks) {
      for (const auto& [v, u] : non_adjacent_pairs(g)) {
        CheckRecord rec;
        rec.name = name + " v=" + std::to_string(v) +
                   " u=" + std::to_string(u) + " k=" + std::to_string(k);
        const auto res = verify_step_accuracy(g, v, u, k);
        rec.pass = res.pass;
        rec.values = res.vacuous ? "vacuous"
                                 : "tv=" + rat(res.tv) +
                                       " alpha=" + rat(res.alpha);
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

SuiteResult suite_pipeline_tv(const std::vector<int>& ks) {
  SuiteResult result;
  result.suite = "pipeline-tv";
  for (const auto& [name, g, L] : scheduled_fixture_corpus()) {
    for (int k : ks) {
      CheckRecord rec;
      rec.name = name + " k=" + std::to_string(k);
      const auto res = verify_pipeline_accuracy(g, k, L);
      rec.pass = res.pass;
      rec.values = res.vacuous
                       ? "vacuous"
                       : "r=" + std::to_string(res.r) + " tv=" + rat(res.tv) +
                             " alpha_sum=" + rat(res.alpha_sum);
      result.records.push_back(std::move(rec));
    }
  }
  return result;
}

SuiteResult suite_bijection(int max_n, const std::vector<int>& ks) {
  SuiteResult result;
  result.suite = "bijection";
  for (const auto& [name, g] : fixture_corpus()) {
    if (g.n() > max_n) continue;
    for (int k : ks) {
      for (const auto& [v, u] : non_adjacent_pairs(g)) {
        CheckRecord rec;
        rec.name = name + " v=" + std::to_string(v) +
                   " u=" + std::to_string(u) + " k=" + std::to_string(k);
        const auto check = verify_bijection(g, v, u, k);
        rec.pass = check.violations == 0;
        rec.values = "pairs=" + std::to_string(check.pairs_checked) +
                     " violations=" + std::to_string(check.violations);
        for (const auto& d : check.details) rec.values += "; " + d;
        result.records.push_back(std::move(rec));
      }
    }
  }
  return result;
}

SuiteResult suite_domination(int max_n, int k) {
  SuiteResult result;
  result.suite = "domination";
  const auto graphs = connected_graphs_up_to_iso(max_n);
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    CheckRecord rec;
    rec.name = "graph_" + std::to_string(gi) + " n=" + std::to_string(g.n()) +
               " m=" + std::to_string(g.edge_count()) +
               " k=" + std::to_string(k);
    std::uint64_t paths_checked = 0, violations = 0;
    for (int v = 0; v < g.n(); ++v) {
      // all simple paths from v with at most 3 edges, deduplicated by
      // vertex set (the event and both bounds depend only on the set)
      std::vector<std::vector<int>> paths;
      {
        std::vector<std::vector<int>> frontier{{v}};
        paths.push_back({v});
        for (int len = 0; len < 3; ++len) {
          std::vector<std::vector<int>> next;
          for (const auto& p : frontier)
            for (int w : g.neighbours(p.back())) {
              if (std::find(p.begin(), p.end(), w) != p.end()) continue;
              auto q = p;
              q.push_back(w);
              next.push_back(q);
              paths.push_back(std::move(q));
            }
          frontier = std::move(next);
        }
        std::vector<std::vector<int>> unique_sets;
        std::vector<std::vector<int>> kept;
        for (auto& p : paths) {
          auto set = p;
          std::sort(set.begin(), set.end());
          if (std::find(unique_sets.begin(), unique_sets.end(), set) ==
              unique_sets.end()) {
            unique_sets.push_back(std::move(set));
            kept.push_back(std::move(p));
          }
        }
        paths = std::move(kept);
      }
      for (const auto& p : paths) {
        ++paths_checked;
        const auto res = verify_domination(g, v, p, k, 0);
        if (!res.pass) {
          ++violations;
          rec.values += " FAIL path";
          for (int w : p) rec.values += "." + std::to_string(w);
          rec.values +=
              " pL=" + rat(res.p_colouring) + " pP=" + rat(res.p_product);
        }
      }
    }
    rec.pass = violations == 0;
    rec.values = "paths=" + std::to_string(paths_checked) +
                 " violations=" + std::to_string(violations) + rec.values;
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace kcol
