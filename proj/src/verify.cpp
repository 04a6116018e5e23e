#include "kcol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "kcol/base_sampler.hpp"
#include "kcol/pipeline.hpp"
#include "kcol/schedule.hpp"
#include "kcol/switching.hpp"

namespace kcol {

namespace {

void check_encodable(int n, int k) {
  if (k < 1) throw std::invalid_argument("encoding: k < 1");
  if (n * std::log2(std::max(2, k)) > 63.0)
    throw std::invalid_argument("encoding: k^n exceeds 63 bits");
}

void check_guard(int n, int k, double guard, const char* where) {
  if (std::pow(static_cast<double>(k), static_cast<double>(n)) > guard)
    throw std::invalid_argument(std::string(where) +
                                ": enumeration guard exceeded");
}

// Backtracking over proper colourings in vertex-id order; forced_v = -1
// means unconstrained. Emits canonical codes in ascending order.
std::vector<std::uint64_t> enumerate_impl(const Graph& g, int k, int forced_v,
                                          int forced_c) {
  const int n = g.n();
  check_encodable(n, k);
  std::vector<std::uint64_t> out;
  std::vector<int> colour(n, -1);
  int depth = 0;
  while (depth >= 0) {
    if (depth == n) {
      std::uint64_t code = 0;
      for (int i = 0; i < n; ++i)
        code = code * static_cast<std::uint64_t>(k) +
               static_cast<std::uint64_t>(colour[i]);
      out.push_back(code);
      --depth;
      continue;
    }
    int c = colour[depth] + 1;
    int limit = k;
    if (depth == forced_v) {
      // only the forced colour may be tried at this vertex
      c = colour[depth] == -1 ? forced_c : k;
      limit = forced_c + 1;
    }
    bool placed = false;
    for (; c < limit; ++c) {
      bool ok = true;
      for (int w : g.neighbours(depth)) {
        if (w < depth && colour[w] == c) {
          ok = false;
          break;
        }
      }
      if (ok) {
        colour[depth] = c;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      if (depth < n) colour[depth] = -1;
    } else {
      colour[depth] = -1;
      --depth;
    }
  }
  return out;
}

Graph remove_edge_if_present(const Graph& g, int v, int u) {
  if (!g.has_edge(v, u)) return g;
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  const Edge target{std::min(v, u), std::max(v, u)};
  for (const auto& e : g.edges())
    if (e != target) edges.push_back(e);
  return Graph::from_edges(g.n(), std::move(edges));
}

}  // namespace

std::uint64_t encode_colouring(const std::vector<int>& colour, int k) {
  check_encodable(static_cast<int>(colour.size()), k);
  std::uint64_t code = 0;
  for (int c : colour)
    code = code * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(c);
  return code;
}

std::vector<int> decode_colouring(std::uint64_t code, int n, int k) {
  std::vector<int> colour(n);
  for (int i = n - 1; i >= 0; --i) {
    colour[i] = static_cast<int>(code % static_cast<std::uint64_t>(k));
    code /= static_cast<std::uint64_t>(k);
  }
  return colour;
}

Rational ColouringDistribution::total_mass() const {
  Rational sum = 0;
  for (const auto& [code, mass] : support) sum += mass;
  return sum;
}

ColouringDistribution uniform_over(const std::vector<std::uint64_t>& codes,
                                   int n, int k) {
  ColouringDistribution d;
  d.n = n;
  d.k = k;
  const Rational mass(1, static_cast<std::int64_t>(codes.size()));
  for (auto code : codes) d.support.emplace(code, mass);
  return d;
}

Rational tv_distance(const ColouringDistribution& a,
                     const ColouringDistribution& b) {
  if (a.n != b.n || a.k != b.k)
    throw std::invalid_argument("tv_distance: mismatched dimensions");
  Rational sum = 0;
  auto ia = a.support.begin();
  auto ib = b.support.begin();
  while (ia != a.support.end() || ib != b.support.end()) {
    if (ib == b.support.end() ||
        (ia != a.support.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.support.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

std::vector<std::uint64_t> enumerate_proper(const Graph& g, int k,
                                            double guard) {
  check_guard(g.n(), k, guard, "enumerate_proper");
  return enumerate_impl(g, k, -1, 0);
}

std::vector<std::uint64_t> enumerate_proper_where(const Graph& g, int k,
                                                  int v, int colour,
                                                  double guard) {
  if (v < 0 || v >= g.n() || colour < 0 || colour >= k)
    throw std::invalid_argument("enumerate_proper_where: bad arguments");
  check_guard(g.n(), k, guard, "enumerate_proper_where");
  return enumerate_impl(g, k, v, colour);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  auto local = [&sorted](int v) {
    return static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (int w : g.neighbours(sorted[i])) {
      if (w <= sorted[i]) continue;
      if (std::binary_search(sorted.begin(), sorted.end(), w))
        edges.emplace_back(static_cast<int>(i), local(w));
    }
  return Graph::from_edges(static_cast<int>(sorted.size()), std::move(edges));
}

ColouringDistribution component_sampler_distribution(
    const Graph& g, const std::vector<int>& component_vertices, int k,
    int c_max, double guard) {
  std::vector<int> sorted = component_vertices;
  std::sort(sorted.begin(), sorted.end());
  const int s = static_cast<int>(sorted.size());
  check_encodable(s, k);

  const BigInt total = component_colouring_count(g, sorted, k, c_max);
  if (total > BigInt(static_cast<std::int64_t>(guard)))
    throw std::invalid_argument(
        "component_sampler_distribution: guard exceeded");

  ColouringDistribution dist;
  dist.n = s;
  dist.k = k;
  const Rational mass(BigInt(1), total);
  for_each_component_colouring(
      g, sorted, k, c_max,
      [&](const std::vector<int>&, const std::vector<int>& colours) {
        dist.support[encode_colouring(colours, k)] += mass;
      });
  return dist;
}

ColouringDistribution sampler_base_distribution(const Graph& g0, int k,
                                                int c_max, double guard) {
  const auto comps = components(g0);
  // product of the per-component laws
  ColouringDistribution result;
  result.n = g0.n();
  result.k = k;
  result.support.emplace(0, Rational(1));

  double projected = 1;
  for (const auto& comp : comps) {
    const ColouringDistribution part = component_sampler_distribution(
        g0, comp.vertices, k, c_max, guard);
    projected *= static_cast<double>(part.support.size());
    if (projected > guard)
      throw std::invalid_argument("sampler_base_distribution: guard exceeded");

    // weight of vertex positions within the full encoding
    std::map<std::uint64_t, Rational> merged;
    for (const auto& [global_code, global_mass] : result.support) {
      for (const auto& [local_code, local_mass] : part.support) {
        const auto local = decode_colouring(
            local_code, static_cast<int>(comp.vertices.size()), k);
        auto colour = decode_colouring(global_code, g0.n(), k);
        for (std::size_t i = 0; i < comp.vertices.size(); ++i)
          colour[comp.vertices[i]] = local[i];
        merged[encode_colouring(colour, k)] += global_mass * local_mass;
      }
    }
    result.support = std::move(merged);
  }
  return result;
}

ColouringDistribution exact_output_distribution(const Graph& g, int k, int L,
                                                double guard) {
  const DeletionSchedule schedule = build_schedule(g, L);
  const int r = schedule.r();
  check_encodable(g.n(), k);

  const auto base_codes = enumerate_proper(schedule.base, k, guard);
  if (base_codes.empty())
    throw uncolourable_error("exact_output_distribution: base uncolourable");
  if (static_cast<double>(base_codes.size()) *
          std::pow(static_cast<double>(k - 1), static_cast<double>(r)) >
      guard)
    throw std::invalid_argument("exact_output_distribution: guard exceeded");

  // integer weights over the common denominator |base| * (k-1)^r
  std::uint64_t denom_pow = 1;
  for (int i = 0; i < r; ++i) denom_pow *= static_cast<std::uint64_t>(k - 1);
  std::unordered_map<std::uint64_t, std::uint64_t> weight;
  weight.reserve(base_codes.size() * 2);
  for (auto code : base_codes) weight.emplace(code, denom_pow);

  std::vector<std::vector<int>> adj = schedule.base.adjacency();
  SwitchScratch scratch;
  Colouring x;
  x.k = k;
  for (int i = 0; i < r; ++i) {
    const auto [v, u] = schedule.deletions[i];
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    next.reserve(weight.size() * 2);
    for (const auto& [code, w] : weight) {
      x.colour = decode_colouring(code, g.n(), k);
      if (x.colour[v] != x.colour[u]) {
        next[code] += w;
        continue;
      }
      const std::uint64_t share = w / static_cast<std::uint64_t>(k - 1);
      const int c = x.colour[v];
      for (int q = 0; q < k; ++q) {
        if (q == c) continue;
        const auto comp =
            disagreement_component(adj, x, v, q, u, std::nullopt, &scratch);
        apply_switch(x, comp);
        next[encode_colouring(x.colour, k)] += share;
        undo_switch(x, comp);
      }
    }
    weight = std::move(next);
    adj[v].push_back(u);
    adj[u].push_back(v);
  }

  ColouringDistribution dist;
  dist.n = g.n();
  dist.k = k;
  const BigInt denom =
      BigInt(base_codes.size()) * BigInt(denom_pow);
  for (const auto& [code, w] : weight)
    dist.support.emplace(code, Rational(BigInt(w), denom));
  return dist;
}

namespace {

// Membership bitmask of the {c,q}-component from v (for n <= 63).
std::uint64_t component_mask(const Graph& g, const std::vector<int>& colour,
                             int v, int c, int q) {
  std::uint64_t mask = std::uint64_t{1} << v;
  std::vector<int> stack{v};
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (int b : g.neighbours(a)) {
      if (mask >> b & 1) continue;
      if (colour[b] != c && colour[b] != q) continue;
      mask |= std::uint64_t{1} << b;
      stack.push_back(b);
    }
  }
  return mask;
}

}  // namespace

AlphaReport alpha_exact(const Graph& g_next, int v, int u, int k,
                        double guard) {
  if (v == u || v < 0 || u < 0 || v >= g_next.n() || u >= g_next.n())
    throw std::invalid_argument("alpha_exact: bad vertex pair");
  const Graph gi = remove_edge_if_present(g_next, v, u);
  const auto codes = enumerate_proper(gi, k, guard);

  // counts over bad colourings (per c, per q) and goods (per ordered pair)
  std::vector<std::int64_t> bad_total(k, 0);
  std::vector<std::vector<std::int64_t>> bad_hit(k,
                                                 std::vector<std::int64_t>(k));
  std::vector<std::vector<std::int64_t>> good_total(
      k, std::vector<std::int64_t>(k, 0));
  std::vector<std::vector<std::int64_t>> good_hit(
      k, std::vector<std::int64_t>(k, 0));

  for (auto code : codes) {
    const auto colour = decode_colouring(code, gi.n(), k);
    const int cv = colour[v], cu = colour[u];
    if (cv == cu) {
      ++bad_total[cv];
      for (int q = 0; q < k; ++q) {
        if (q == cv) continue;
        const auto mask = component_mask(gi, colour, v, cv, q);
        if (mask >> u & 1) ++bad_hit[cv][q];
      }
    } else {
      ++good_total[cv][cu];
      const auto mask = component_mask(gi, colour, v, cv, cu);
      if (mask >> u & 1) ++good_hit[cv][cu];
    }
  }

  AlphaReport report;
  report.alpha = 0;
  report.degenerate = true;
  for (int c = 0; c < k; ++c)
    if (bad_total[c] > 0) report.degenerate = false;

  for (int c = 0; c < k; ++c)
    for (int q = 0; q < k; ++q) {
      if (q == c) continue;
      AlphaPairEntry entry;
      entry.c = c;
      entry.q = q;
      entry.frac_cc = bad_total[c] > 0
                          ? Rational(bad_hit[c][q], bad_total[c])
                          : Rational(0);
      entry.frac_qc = good_total[q][c] > 0
                          ? Rational(good_hit[q][c], good_total[q][c])
                          : Rational(0);
      report.alpha = std::max({report.alpha, entry.frac_cc, entry.frac_qc});
      report.pairs.push_back(std::move(entry));
    }
  // with no bad colourings the step never switches, so the pathological
  // fractions on the good side are irrelevant
  if (report.degenerate) report.alpha = 0;
  return report;
}

StepAccuracyResult verify_step_accuracy(const Graph& g_next, int v, int u,
                                        int k, double guard) {
  const Graph gi = remove_edge_if_present(g_next, v, u);
  const auto codes = enumerate_proper(gi, k, guard);

  StepAccuracyResult result;
  result.alpha = alpha_exact(g_next, v, u, k, guard).alpha;

  // nu' integer weights over denominator |codes| * (k-1)
  std::unordered_map<std::uint64_t, std::int64_t> weight;
  weight.reserve(codes.size() * 2);
  std::vector<std::uint64_t> goods;
  SwitchScratch scratch;
  Colouring x;
  x.k = k;
  for (auto code : codes) {
    x.colour = decode_colouring(code, gi.n(), k);
    const int cv = x.colour[v];
    if (cv != x.colour[u]) {
      goods.push_back(code);
      weight[code] += k - 1;
      continue;
    }
    for (int q = 0; q < k; ++q) {
      if (q == cv) continue;
      const auto comp =
          disagreement_component(gi, x, v, q, u, std::nullopt, &scratch);
      apply_switch(x, comp);
      weight[encode_colouring(x.colour, k)] += 1;
      undo_switch(x, comp);
    }
  }

  if (goods.empty()) {
    result.vacuous = true;
    result.pass = true;
    result.tv = 0;
    return result;
  }

  // TV over the union with common denominator |codes|*(k-1)*|goods|
  const BigInt d_prime = BigInt(codes.size()) * (k - 1);
  const BigInt d_goods = BigInt(goods.size());
  std::unordered_set<std::uint64_t> good_set(goods.begin(), goods.end());
  BigInt acc = 0;
  for (const auto& [code, w] : weight) {
    const BigInt lhs = BigInt(w) * d_goods;
    const BigInt rhs = good_set.count(code) ? d_prime : BigInt(0);
    acc += abs(lhs - rhs);
  }
  for (auto code : goods)
    if (!weight.count(code)) acc += d_prime;
  result.tv = Rational(acc, 2 * d_prime * d_goods);
  result.pass = result.tv <= result.alpha;
  return result;
}

PipelineTvResult verify_pipeline_accuracy(const Graph& g, int k, int L,
                                          double guard) {
  PipelineTvResult result;
  const auto proper = enumerate_proper(g, k, guard);
  if (proper.empty()) {
    result.vacuous = true;
    result.pass = true;
    return result;
  }
  const ColouringDistribution law = exact_output_distribution(g, k, L, guard);
  result.tv = tv_distance(law, uniform_over(proper, g.n(), k));

  const DeletionSchedule schedule = build_schedule(g, L);
  result.r = schedule.r();
  result.alpha_sum = 0;
  std::vector<Edge> edges = schedule.base.edges();
  for (const auto& [v, u] : schedule.deletions) {
    edges.emplace_back(std::min(v, u), std::max(v, u));
    const Graph g_next = Graph::from_edges(g.n(), edges);
    result.alpha_sum += alpha_exact(g_next, v, u, k, guard).alpha;
  }
  result.pass = result.tv <= result.alpha_sum;
  return result;
}

BijectionCheck verify_bijection(const Graph& g_i, int v, int u, int k,
                                double guard) {
  if (g_i.has_edge(v, u))
    throw std::invalid_argument("verify_bijection: v and u must be non-adjacent");
  const auto codes = enumerate_proper(g_i, k, guard);

  BijectionCheck check;
  auto note = [&check](std::string what) {
    ++check.violations;
    if (check.details.size() < 8) check.details.push_back(std::move(what));
  };

  // bucket codes by (sigma_v, sigma_u)
  std::vector<std::vector<std::vector<std::uint64_t>>> bucket(
      k, std::vector<std::vector<std::uint64_t>>(k));
  for (auto code : codes) {
    const auto colour = decode_colouring(code, g_i.n(), k);
    bucket[colour[v]][colour[u]].push_back(code);
  }

  for (int c = 0; c < k; ++c) {
    for (int q = 0; q < k; ++q) {
      if (q == c) continue;
      ++check.pairs_checked;

      // S(c,c): component from v over {c,q} misses u
      std::vector<std::uint64_t> s_cc;
      for (auto code : bucket[c][c]) {
        const auto colour = decode_colouring(code, g_i.n(), k);
        if (!(component_mask(g_i, colour, v, c, q) >> u & 1))
          s_cc.push_back(code);
      }
      // S(q,c): component from v over {q,c} misses u
      std::unordered_set<std::uint64_t> s_qc;
      for (auto code : bucket[q][c]) {
        const auto colour = decode_colouring(code, g_i.n(), k);
        if (!(component_mask(g_i, colour, v, q, c) >> u & 1))
          s_qc.insert(code);
      }

      if (s_cc.size() != s_qc.size())
        note("cardinality mismatch c=" + std::to_string(c) +
             " q=" + std::to_string(q));

      std::unordered_set<std::uint64_t> image;
      SwitchScratch scratch;
      Colouring x;
      x.k = k;
      for (auto code : s_cc) {
        x.colour = decode_colouring(code, g_i.n(), k);
        const auto comp =
            disagreement_component(g_i, x, v, q, u, std::nullopt, &scratch);
        apply_switch(x, comp);
        if (find_monochromatic_edge(g_i, x.colour))
          note("switch produced an improper colouring");
        const auto tau = encode_colouring(x.colour, k);
        if (!s_qc.count(tau)) note("image outside S(q,c)");
        if (!image.insert(tau).second) note("injectivity failure");
        // switching back with the old root colour must restore the original
        const auto comp2 =
            disagreement_component(g_i, x, v, c, u, std::nullopt, &scratch);
        apply_switch(x, comp2);
        if (encode_colouring(x.colour, k) != code)
          note("double switch did not restore the colouring");
      }
    }
  }
  return check;
}

DominationResult verify_domination(const Graph& g, int v,
                                   const std::vector<int>& path, int k, int c,
                                   double guard) {
  if (path.empty() || path.front() != v)
    throw std::invalid_argument("verify_domination: path must start at v");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.has_edge(path[i], path[i + 1]))
      throw std::invalid_argument("verify_domination: not a path of g");
  {
    auto sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("verify_domination: path revisits a vertex");
  }
  if (c < 0 || c >= k)
    throw std::invalid_argument("verify_domination: colour out of range");

  DominationResult result;
  result.p_product = 1;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int deg = g.degree(path[i]);
    if (k > deg) result.p_product *= Rational(1, k - deg);
    // k <= deg: the vertex is disagreeing with probability 1
  }

  const auto codes = enumerate_proper_where(g, k, v, c, guard);
  if (codes.empty()) {
    result.p_colouring = 0;
    result.pass = true;
    return result;
  }
  std::uint64_t path_mask = 0;
  for (int w : path) path_mask |= std::uint64_t{1} << w;

  std::int64_t hits = 0;
  for (auto code : codes) {
    const auto colour = decode_colouring(code, g.n(), k);
    for (int q = 0; q < k; ++q) {
      if (q == c) continue;
      const auto mask = component_mask(g, colour, v, c, q);
      if ((mask & path_mask) == path_mask) ++hits;
    }
  }
  result.p_colouring =
      Rational(hits, static_cast<std::int64_t>(codes.size()) * (k - 1));
  result.pass = result.p_colouring <= result.p_product;
  return result;
}

namespace {

// Counts simple all-disagreeing paths from the root, one count per depth.
void count_disagreement_paths(const Graph& g,
                              const std::vector<char>& disagreeing, int root,
                              int l_max, std::vector<double>& counts) {
  std::vector<char> on_path(g.n(), 0);
  std::vector<std::pair<int, std::size_t>> stack;  // (vertex, next nbr idx)
  std::uint64_t budget = 200'000'000;

  stack.emplace_back(root, 0);
  on_path[root] = 1;
  counts[0] += 1;
  while (!stack.empty()) {
    auto& [a, idx] = stack.back();
    const int depth = static_cast<int>(stack.size()) - 1;
    if (depth >= l_max || idx >= g.neighbours(a).size()) {
      on_path[a] = 0;
      stack.pop_back();
      continue;
    }
    const int b = g.neighbours(a)[idx++];
    if (on_path[b] || !disagreeing[b]) continue;
    if (--budget == 0)
      throw std::runtime_error(
          "path_decay_sim: per-trial path budget exceeded; lower l_max");
    counts[depth + 1] += 1;
    on_path[b] = 1;
    stack.emplace_back(b, 0);
  }
}

struct SlopeFit {
  bool ok = false;
  double slope = 0;
};

SlopeFit fit_log_slope(const std::vector<double>& means) {
  SlopeFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t l = 0; l < means.size(); ++l) {
    if (means[l] <= 0) continue;
    const double x = static_cast<double>(l);
    const double y = std::log(means[l]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return fit;
  const double denom = m * sxx - sx * sx;
  if (denom == 0) return fit;
  fit.ok = true;
  fit.slope = (m * sxy - sx * sy) / denom;
  return fit;
}

}  // namespace

PathDecayReport path_decay_sim(int n, double d, int k, int trials, int l_max,
                               std::uint64_t seed, int workers) {
  if (trials < 1000)
    throw std::invalid_argument("path_decay_sim: needs at least 1000 trials");
  if (l_max < 1) throw std::invalid_argument("path_decay_sim: l_max < 1");

  const int cols = l_max + 1;
  std::vector<std::vector<double>> per_trial(
      trials, std::vector<double>(cols, 0.0));
  const RandomStream root_stream(seed);

  auto work = [&](int lo, int hi) {
    for (int t = lo; t < hi; ++t) {
      RandomStream stream =
          root_stream.substream(Phase::trial, static_cast<std::uint64_t>(t));
      const Graph g = generate_gnp(n, d, stream);
      std::vector<char> disagreeing(g.n(), 0);
      for (int w = 0; w < g.n(); ++w) {
        const int deg = g.degree(w);
        if (w == 0 || deg >= k)
          disagreeing[w] = 1;
        else
          disagreeing[w] =
              stream.uniform_below(static_cast<std::uint64_t>(k - deg)) == 0;
      }
      count_disagreement_paths(g, disagreeing, 0, l_max, per_trial[t]);
    }
  };
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      if (lo >= trials) break;
      pool.emplace_back(work, lo, std::min(trials, lo + chunk));
    }
    for (auto& t : pool) t.join();
  }

  PathDecayReport report;
  std::vector<double> mean(cols, 0.0);
  for (int l = 0; l < cols; ++l) {
    double sum = 0, sumsq = 0;
    for (int t = 0; t < trials; ++t) {
      sum += per_trial[t][l];
      sumsq += per_trial[t][l] * per_trial[t][l];
    }
    mean[l] = sum / trials;
    const double var =
        std::max(0.0, (sumsq - sum * sum / trials) / (trials - 1));
    report.points.push_back(
        {l, mean[l], std::sqrt(var / static_cast<double>(trials))});
  }

  const SlopeFit full = fit_log_slope(mean);
  if (!full.ok) return report;
  report.ratio = std::exp(full.slope);

  // grouped jackknife over trial blocks for a slope interval
  const int blocks = std::min(20, trials);
  std::vector<double> slopes;
  for (int b = 0; b < blocks; ++b) {
    std::vector<double> loo(cols, 0.0);
    int kept = 0;
    for (int t = 0; t < trials; ++t) {
      if (t % blocks == b) continue;
      for (int l = 0; l < cols; ++l) loo[l] += per_trial[t][l];
      ++kept;
    }
    for (auto& x : loo) x /= kept;
    const SlopeFit fit = fit_log_slope(loo);
    if (fit.ok) slopes.push_back(fit.slope);
  }
  if (slopes.size() >= 2) {
    const double b = static_cast<double>(slopes.size());
    double avg = 0;
    for (double s : slopes) avg += s;
    avg /= b;
    double var = 0;
    for (double s : slopes) var += (s - avg) * (s - avg);
    var *= (b - 1) / b;
    const double half = 1.96 * std::sqrt(var);
    report.ratio_lo = std::exp(full.slope - half);
    report.ratio_hi = std::exp(full.slope + half);
  }
  return report;
}

CorrelationProbe correlation_decay_probe(const Graph& g, int v, int u, int k,
                                         std::uint64_t samples,
                                         std::uint64_t seed, double guard) {
  CorrelationProbe probe;
  probe.distance = bfs_distance(g, v, u, g.n());

  const double states =
      std::pow(static_cast<double>(k), static_cast<double>(g.n()));
  if (states <= guard &&
      g.n() * std::log2(std::max(2, k)) <= 63.0) {
    probe.exact = true;
    const auto codes = enumerate_proper(g, k, guard);
    if (codes.empty())
      throw uncolourable_error("correlation_decay_probe: no proper colourings");
    std::vector<std::vector<std::int64_t>> joint(
        k, std::vector<std::int64_t>(k, 0));
    std::vector<std::int64_t> row(k, 0);
    for (auto code : codes) {
      const auto colour = decode_colouring(code, g.n(), k);
      ++joint[colour[v]][colour[u]];
      ++row[colour[v]];
    }
    Rational worst = 0;
    for (int q = 0; q < k; ++q) {
      if (row[q] == 0) continue;
      for (int c = 0; c < k; ++c) {
        const Rational dev =
            abs(Rational(joint[q][c], row[q]) - Rational(1, k));
        worst = std::max(worst, dev);
      }
    }
    probe.deviation_exact = worst;
    probe.deviation = worst.convert_to<double>();
    return probe;
  }

  // sampling mode via whole pipeline runs
  RunConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  cfg.mode = StepMode::retry;
  cfg.keep_step_records = false;
  std::vector<std::vector<std::int64_t>> joint(k,
                                               std::vector<std::int64_t>(k, 0));
  std::vector<std::int64_t> row(k, 0);
  auto [colourings, agg] = sample_many(g, cfg, samples);
  for (const auto& col : colourings) {
    ++joint[col.colour[v]][col.colour[u]];
    ++row[col.colour[v]];
  }
  double worst = 0, se = 0;
  std::int64_t thinnest = samples ? row[0] : 0;
  for (int q = 0; q < k; ++q) {
    thinnest = std::min(thinnest, row[q]);
    if (row[q] == 0) continue;
    for (int c = 0; c < k; ++c) {
      const double p = static_cast<double>(joint[q][c]) / row[q];
      worst = std::max(worst, std::abs(p - 1.0 / k));
      se = std::max(se, std::sqrt(p * (1 - p) / row[q]));
    }
  }
  probe.deviation = worst;
  probe.stderr_mean = se;
  probe.flagged = thinnest < 30;
  return probe;
}

}  // namespace kcol
