#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcol/colouring.hpp"
#include "kcol/graph.hpp"
#include "kcol/rng.hpp"

namespace kcol {

using Rational = boost::multiprecision::cpp_rational;

// Canonical encoding of a colouring: base-k integer, vertex 0 most
// significant. Requires n * log2(k) to fit in 63 bits.
std::uint64_t encode_colouring(const std::vector<int>& colour, int k);
std::vector<int> decode_colouring(std::uint64_t code, int n, int k);

// Exact probability map over canonically encoded colourings.
struct ColouringDistribution {
  int n = 0;
  int k = 0;
  std::map<std::uint64_t, Rational> support;

  Rational total_mass() const;
};

ColouringDistribution uniform_over(const std::vector<std::uint64_t>& codes,
                                   int n, int k);

// (1/2) sum |a - b| over the union of supports, exact.
Rational tv_distance(const ColouringDistribution& a,
                     const ColouringDistribution& b);

// All proper colourings by backtracking in vertex-id order, as sorted
// canonical codes. Guard bounds k^n.
std::vector<std::uint64_t> enumerate_proper(const Graph& g, int k,
                                            double guard = 1e8);
// Same, restricted to colourings assigning `colour` to vertex v.
std::vector<std::uint64_t> enumerate_proper_where(const Graph& g, int k,
                                                  int v, int colour,
                                                  double guard = 1e8);

// Induced subgraph on a sorted vertex subset, relabelled to 0..s-1.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// The base sampler's implied law over one component, reconstructed exactly
// by unranking every index below the component count. Encodings are over the
// component's sorted vertex list.
ColouringDistribution component_sampler_distribution(
    const Graph& g, const std::vector<int>& component_vertices, int k,
    int c_max = 2, double guard = 1e7);

// Product of the per-component sampler laws: the exact law of sample_base.
ColouringDistribution sampler_base_distribution(const Graph& g0, int k,
                                                int c_max = 2,
                                                double guard = 1e6);

// Exact law of the faithful pipeline on g with threshold L: every base
// colouring weighted uniformly, every bad step branching over the k-1
// switch colours. Improper terminals stay in the support.
ColouringDistribution exact_output_distribution(const Graph& g, int k, int L,
                                                double guard = 1e7);

struct AlphaPairEntry {
  int c = 0;
  int q = 0;
  Rational frac_cc;  // fraction of colourings with sigma_v = sigma_u = c
                     // whose {c,q}-component from v reaches u
  Rational frac_qc;  // same for sigma_v = q, sigma_u = c and {q,c}-component
};

struct AlphaReport {
  std::vector<AlphaPairEntry> pairs;  // every ordered pair c != q
  Rational alpha;                     // max over all entries
  bool degenerate = false;            // no bad colourings exist
};

// Exact pathological-event fractions for the step from g_next minus {v,u}
// to g_next. Works whether or not g_next actually contains the edge.
AlphaReport alpha_exact(const Graph& g_next, int v, int u, int k,
                        double guard = 1e8);

struct StepAccuracyResult {
  Rational tv;
  Rational alpha;
  bool pass = false;     // tv <= alpha
  bool vacuous = false;  // no good colourings to compare against
};

// nu  = uniform over good colourings of g_next minus {v,u};
// nu' = exact law of one faithful step applied to a uniform colouring.
StepAccuracyResult verify_step_accuracy(const Graph& g_next, int v, int u,
                                        int k, double guard = 1e8);

struct PipelineTvResult {
  Rational tv;         // TV(exact pipeline law, uniform over proper of g)
  Rational alpha_sum;  // sum of per-step alphas
  int r = 0;
  bool pass = false;
  bool vacuous = false;  // g has no proper colourings
};

PipelineTvResult verify_pipeline_accuracy(const Graph& g, int k, int L,
                                          double guard = 1e7);

struct BijectionCheck {
  std::uint64_t pairs_checked = 0;  // (c, q) pairs examined
  std::uint64_t violations = 0;
  std::vector<std::string> details;  // first few violation descriptions
};

// Exhaustive check that switching is a bijection between the colourings
// with sigma_v = sigma_u = c whose component misses u and those with
// sigma_v = q, sigma_u = c whose component misses u: cardinality equality,
// range containment, injectivity, and double-switch identity.
BijectionCheck verify_bijection(const Graph& g_i, int v, int u, int k,
                                double guard = 1e8);

struct DominationResult {
  Rational p_colouring;  // path-of-disagreement probability, colouring model
  Rational p_product;    // product-measure bound
  bool pass = false;     // p_colouring <= p_product
};

// Exact check that the product measure dominates the colouring-induced
// disagreement process on one path (which must start at v).
DominationResult verify_domination(const Graph& g, int v,
                                   const std::vector<int>& path, int k, int c,
                                   double guard = 1e8);

struct PathDecayPoint {
  int l = 0;
  double mean = 0;
  double stderr_mean = 0;
};

struct PathDecayReport {
  std::vector<PathDecayPoint> points;  // l = 0 .. l_max
  std::optional<double> ratio;         // exp(slope of log mean vs l)
  std::optional<double> ratio_lo;      // 95% jackknife interval
  std::optional<double> ratio_hi;
};

// Monte Carlo for the product measure: per trial, sample G(n, d/n), mark
// each vertex disagreeing with probability 1/(k - deg) (clamped to 1 when
// k <= deg, root always marked), and count simple all-disagreeing paths
// from the root by depth-limited DFS.
PathDecayReport path_decay_sim(int n, double d, int k, int trials, int l_max,
                               std::uint64_t seed, int workers = 1);

struct CorrelationProbe {
  bool exact = false;
  Rational deviation_exact;       // only in exact mode
  double deviation = 0;           // max over (c,q) of |P[u=c|v=q] - 1/k|
  double stderr_mean = 0;         // sampling mode
  bool flagged = false;           // thin cells in sampling mode
  std::optional<int> distance;    // graph distance v-u, nullopt if apart
};

// Empirical (or exact, under the enumeration guard) spatial-mixing probe.
CorrelationProbe correlation_decay_probe(const Graph& g, int v, int u, int k,
                                         std::uint64_t samples,
                                         std::uint64_t seed,
                                         double guard = 1e8);

}  // namespace kcol
