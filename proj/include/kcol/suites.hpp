#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kcol {

struct CheckRecord {
  std::string name;
  std::string values;  // exact quantities as numerator/denominator strings
  bool pass = true;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckRecord> records;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : records)
      if (!r.pass) ++n;
    return n;
  }
  bool all_pass() const { return failures() == 0; }
};

inline const std::vector<int>& default_suite_colours() {
  static const std::vector<int> ks{3, 4, 5};
  return ks;
}

// Base sampler exactness: on every forest/unicyclic fixture and listed k,
// the sampler's index map is a bijection onto the proper colourings of each
// component (TV = 0 against uniform, exactly).
SuiteResult suite_base_exact(
    const std::vector<int>& ks = default_suite_colours());

// Step accuracy: ||nu - nu'|| <= alpha on every fixture with n <= max_n,
// every non-adjacent pair, both sides exact.
SuiteResult suite_step_alpha(
    int max_n = 8, const std::vector<int>& ks = default_suite_colours());

// Whole-pipeline accuracy: TV(exact output law, uniform) <= sum of per-step
// alphas on fixtures with schedules of r <= 3.
SuiteResult suite_pipeline_tv(
    const std::vector<int>& ks = default_suite_colours());

// Switching bijection: cardinality, range, injectivity and double-switch
// identity on every fixture, pair, and colour pair.
SuiteResult suite_bijection(
    int max_n = 8, const std::vector<int>& ks = default_suite_colours());

// Product-measure domination for all paths of length <= 3 from all roots in
// all connected graphs with n <= max_n (one per isomorphism class), k = 4.
SuiteResult suite_domination(int max_n = 6, int k = 4);

}  // namespace kcol
