#include "kcol/base_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

namespace kcol {

namespace {

using boost::multiprecision::pow;

// Rooted spanning tree of one component. Vertices are stored in DFS preorder
// over a BFS tree, so the subtree of local vertex i is the contiguous slice
// [i, i + subtree[i]).
struct TreeModel {
  std::vector<int> verts;                  // global ids, preorder
  std::vector<int> parent;                 // local index, -1 for root
  std::vector<std::vector<int>> children;  // local indices, ascending
  std::vector<int> subtree;                // subtree sizes
  std::vector<Edge> extra;                 // non-tree edges, canonical order
};

TreeModel build_rooted_tree(const Graph& g, const std::vector<int>& sorted,
                            int root) {
  const int s = static_cast<int>(sorted.size());
  auto local_of = [&sorted](int global) {
    return static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), global) -
        sorted.begin());
  };

  // BFS fixes the tree (parent pointers); sorted adjacency keeps it
  // deterministic.
  std::vector<int> parent_bfs(s, -1);
  std::vector<char> seen(s, 0);
  std::vector<int> order;
  order.reserve(s);
  std::deque<int> queue{root};
  seen[local_of(root)] = 1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    order.push_back(a);
    for (int b : g.neighbours(a)) {
      const int lb = local_of(b);
      if (seen[lb]) continue;
      seen[lb] = 1;
      parent_bfs[lb] = a;
      queue.push_back(b);
    }
  }
  if (static_cast<int>(order.size()) != s)
    throw std::invalid_argument("component is not connected");

  std::vector<std::vector<int>> kids_global(s);
  for (int lv = 0; lv < s; ++lv)
    if (parent_bfs[lv] != -1)
      kids_global[local_of(parent_bfs[lv])].push_back(sorted[lv]);
  // adjacency order already ascending, but BFS discovery order follows it;
  // sort anyway so the preorder is unambiguous
  for (auto& kg : kids_global) std::sort(kg.begin(), kg.end());

  TreeModel m;
  m.verts.reserve(s);
  m.parent.assign(s, -1);
  m.children.assign(s, {});
  std::vector<int> place(s, -1);  // sorted-local -> preorder position
  std::vector<std::pair<int, int>> stack{{root, -1}};  // (global, parent pos)
  while (!stack.empty()) {
    auto [v, ppos] = stack.back();
    stack.pop_back();
    const int pos = static_cast<int>(m.verts.size());
    m.verts.push_back(v);
    place[local_of(v)] = pos;
    m.parent[pos] = ppos;
    if (ppos != -1) m.children[ppos].push_back(pos);
    const auto& kg = kids_global[local_of(v)];
    for (auto it = kg.rbegin(); it != kg.rend(); ++it)
      stack.emplace_back(*it, pos);
  }

  m.subtree.assign(s, 1);
  for (int i = s - 1; i > 0; --i) m.subtree[m.parent[i]] += m.subtree[i];

  for (int v : sorted)
    for (int w : g.neighbours(v)) {
      if (w < v) continue;
      const int pv = place[local_of(v)], pw = place[local_of(w)];
      if (m.parent[pv] == pw || m.parent[pw] == pv) continue;
      m.extra.emplace_back(v, w);
    }
  std::sort(m.extra.begin(), m.extra.end());
  return m;
}

// Root at the lowest extra-edge endpoint when the component has extra edges,
// so the constrained part of the tree stays near the root; otherwise at the
// lowest vertex.
TreeModel build_component_model(const Graph& g,
                                const std::vector<int>& vertices) {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  TreeModel m = build_rooted_tree(g, sorted, sorted[0]);
  if (!m.extra.empty()) {
    int root = m.extra[0].first;
    for (const auto& e : m.extra) root = std::min({root, e.first, e.second});
    if (root != sorted[0]) m = build_rooted_tree(g, sorted, root);
  }
  return m;
}

BigInt pow_k1(int k, std::int64_t e) {
  if (e <= 0) return 1;
  return pow(BigInt(k - 1), static_cast<unsigned>(e));
}

// Counting DP evaluated only on the "spine": vertices with a forced colour
// somewhere in their subtree. Subtrees free of forced vertices contribute the
// closed form (k-1)^(size) per excluded parent colour and are never stored.
struct SpineCounts {
  const TreeModel* m = nullptr;
  int k = 0;
  std::vector<int> forced;               // local -> colour or -1
  std::vector<char> constrained;         // local -> forced vertex in subtree?
  std::vector<int> slot;                 // local -> row in counts, or -1
  std::vector<std::vector<BigInt>> counts;
  std::vector<BigInt> row_sum;
  BigInt total = 0;

  void build(const TreeModel& model, int k_, const std::vector<int>& forced_) {
    m = &model;
    k = k_;
    forced = forced_;
    const int s = static_cast<int>(model.verts.size());
    constrained.assign(s, 0);
    for (int i = s - 1; i >= 0; --i) {
      if (forced[i] != -1) constrained[i] = 1;
      if (constrained[i] && model.parent[i] != -1)
        constrained[model.parent[i]] = 1;
    }
    slot.assign(s, -1);
    counts.clear();
    row_sum.clear();
    for (int i = s - 1; i >= 0; --i) {
      if (!constrained[i]) continue;
      slot[i] = static_cast<int>(counts.size());
      std::vector<BigInt> row(k, 0);
      BigInt sum = 0;
      for (int c = 0; c < k; ++c) {
        if (forced[i] != -1 && c != forced[i]) continue;
        BigInt prod = 1;
        for (int j : model.children[i]) {
          const BigInt branch = child_sum_excluding(j, c);
          if (branch == 0) {
            prod = 0;
            break;
          }
          prod *= branch;
        }
        sum += prod;
        row[c] = std::move(prod);
      }
      counts.push_back(std::move(row));
      row_sum.push_back(std::move(sum));
    }
    if (constrained[0]) {
      total = row_sum[slot[0]];
    } else {
      total = BigInt(k) * pow_k1(k, s - 1);
    }
  }

  // Sum of child j's subtree counts over colours != c.
  BigInt child_sum_excluding(int j, int c) const {
    if (!constrained[j]) return pow_k1(k, m->subtree[j]);
    return row_sum[slot[j]] - counts[slot[j]][c];
  }

  const BigInt& count_of(int j, int c) const { return counts[slot[j]][c]; }
};

// Decodes the canonical index of an unconstrained subtree: preorder digits,
// most significant first, base k-1 with the parent's colour skipped.
void decode_free_subtree(const TreeModel& m, int k, int root_local,
                         BigInt index, std::vector<int>& colour) {
  const int lo = root_local + 1;
  const int hi = root_local + m.subtree[root_local];
  if (lo >= hi) return;
  static thread_local std::vector<int> digit;
  digit.resize(hi - lo);
  for (int t = hi - 1; t >= lo; --t) {
    digit[t - lo] = static_cast<int>(index % (k - 1));
    index /= (k - 1);
  }
  for (int t = lo; t < hi; ++t) {
    const int cp = colour[m.parent[t]];
    const int d = digit[t - lo];
    colour[t] = d < cp ? d : d + 1;
  }
}

// Unrank one colouring of the tree under the forced assignment captured in
// `dp`. index must lie in [0, dp.total).
void unrank_tree(const SpineCounts& dp, BigInt index,
                 std::vector<int>& colour) {
  const TreeModel& m = *dp.m;
  const int k = dp.k;
  const int s = static_cast<int>(m.verts.size());
  colour.assign(s, -1);

  if (!dp.constrained[0]) {
    const BigInt per_root = pow_k1(k, s - 1);
    colour[0] = static_cast<int>(index / per_root);
    decode_free_subtree(m, k, 0, index % per_root, colour);
    return;
  }

  // root colour by prefix scan
  {
    int c = 0;
    while (index >= dp.count_of(0, c)) {
      index -= dp.count_of(0, c);
      ++c;
    }
    colour[0] = c;
  }

  std::vector<std::pair<int, BigInt>> stack{{0, std::move(index)}};
  std::vector<BigInt> digits;
  while (!stack.empty()) {
    auto [i, idx] = std::move(stack.back());
    stack.pop_back();
    const int c = colour[i];
    const auto& kids = m.children[i];
    // mixed radix over the children: first child most significant
    digits.assign(kids.size(), 0);
    for (int t = static_cast<int>(kids.size()) - 1; t >= 0; --t) {
      const BigInt radix = dp.child_sum_excluding(kids[t], c);
      digits[t] = idx % radix;
      idx /= radix;
    }
    for (std::size_t t = 0; t < kids.size(); ++t) {
      const int j = kids[t];
      BigInt d = std::move(digits[t]);
      if (!dp.constrained[j]) {
        const BigInt per = pow_k1(k, m.subtree[j] - 1);
        const int off = static_cast<int>(d / per);
        colour[j] = off < c ? off : off + 1;
        decode_free_subtree(m, k, j, d % per, colour);
      } else {
        int cj = 0;
        for (;;) {
          if (cj != c) {
            const BigInt& w = dp.count_of(j, cj);
            if (d < w) break;
            d -= w;
          }
          ++cj;
        }
        colour[j] = cj;
        stack.emplace_back(j, std::move(d));
      }
    }
  }
}

// Joint assignments of the extra-edge endpoints, lexicographic over the
// sorted endpoint set; assignments that make an extra edge monochromatic are
// skipped (they contribute zero count).
struct ConditionedScan {
  std::vector<int> cond;                    // local indices, sorted by global
  std::vector<std::pair<int, int>> pairs;   // extra edges as cond positions
  std::vector<int> phi;                     // current assignment
  int k = 0;
  bool done = false;

  ConditionedScan(const TreeModel& m, int k_) : k(k_) {
    std::vector<int> globals;
    for (const auto& [a, b] : m.extra) {
      globals.push_back(a);
      globals.push_back(b);
    }
    std::sort(globals.begin(), globals.end());
    globals.erase(std::unique(globals.begin(), globals.end()), globals.end());
    std::vector<int> glb_to_local(globals.size());
    for (std::size_t i = 0; i < m.verts.size(); ++i) {
      const auto it =
          std::lower_bound(globals.begin(), globals.end(), m.verts[i]);
      if (it != globals.end() && *it == static_cast<int>(m.verts[i]))
        glb_to_local[it - globals.begin()] = static_cast<int>(i);
    }
    cond = glb_to_local;
    auto pos_of = [&globals](int g) {
      return static_cast<int>(
          std::lower_bound(globals.begin(), globals.end(), g) -
          globals.begin());
    };
    for (const auto& [a, b] : m.extra)
      pairs.emplace_back(pos_of(a), pos_of(b));
    phi.assign(cond.size(), 0);
    if (!valid()) advance();
  }

  bool valid() const {
    for (const auto& [a, b] : pairs)
      if (phi[a] == phi[b]) return false;
    return true;
  }

  void advance() {
    do {
      int pos = static_cast<int>(phi.size()) - 1;
      while (pos >= 0 && phi[pos] == k - 1) phi[pos--] = 0;
      if (pos < 0) {
        done = true;
        return;
      }
      ++phi[pos];
    } while (!valid());
  }

  void apply(std::vector<int>& forced) const {
    for (std::size_t i = 0; i < cond.size(); ++i) forced[cond[i]] = phi[i];
  }
  void clear(std::vector<int>& forced) const {
    for (int lv : cond) forced[lv] = -1;
  }
};

BigInt model_count(const Graph&, const TreeModel& m, int k, int c_max) {
  const auto beta = m.extra.size();
  if (static_cast<int>(beta) > c_max)
    throw too_cyclic_error("component too cyclic: cyclomatic number " +
                           std::to_string(beta) + " exceeds cap " +
                           std::to_string(c_max));
  std::vector<int> forced(m.verts.size(), -1);
  if (beta == 0) {
    return BigInt(k) * pow_k1(k, static_cast<int>(m.verts.size()) - 1);
  }
  BigInt total = 0;
  SpineCounts dp;
  for (ConditionedScan scan(m, k); !scan.done; scan.advance()) {
    scan.apply(forced);
    dp.build(m, k, forced);
    total += dp.total;
    scan.clear(forced);
  }
  return total;
}

void model_unrank(const TreeModel& m, int k, int c_max, BigInt index,
                  std::vector<int>& colour) {
  const auto beta = m.extra.size();
  if (static_cast<int>(beta) > c_max)
    throw too_cyclic_error("component too cyclic");
  std::vector<int> forced(m.verts.size(), -1);
  SpineCounts dp;
  if (beta == 0) {
    dp.build(m, k, forced);
    unrank_tree(dp, std::move(index), colour);
    return;
  }
  for (ConditionedScan scan(m, k); !scan.done; scan.advance()) {
    scan.apply(forced);
    dp.build(m, k, forced);
    if (index < dp.total) {
      unrank_tree(dp, std::move(index), colour);
      return;
    }
    index -= dp.total;
    scan.clear(forced);
  }
  throw std::invalid_argument("unrank index out of range");
}

}  // namespace

std::pair<BigInt, CountTable> count_tree_colourings(
    const Graph& g, const std::vector<int>& vertices,
    const std::vector<std::vector<int>>& lists, int k) {
  if (vertices.empty())
    throw std::invalid_argument("count_tree_colourings: empty component");
  if (k < 1) throw std::invalid_argument("count_tree_colourings: k < 1");
  if (!lists.empty() && lists.size() != vertices.size())
    throw std::invalid_argument("count_tree_colourings: lists misaligned");

  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  TreeModel m = build_rooted_tree(g, sorted, sorted[0]);
  if (!m.extra.empty())
    throw std::invalid_argument("count_tree_colourings: cyclic input");

  const int s = static_cast<int>(m.verts.size());
  // allowed[i][c], remapped onto preorder positions
  std::vector<std::vector<char>> allowed(s, std::vector<char>(k, 1));
  if (!lists.empty()) {
    std::map<int, const std::vector<int>*> by_vertex;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      by_vertex[vertices[i]] = &lists[i];
    for (int i = 0; i < s; ++i) {
      const auto& list = *by_vertex.at(m.verts[i]);
      if (list.empty()) continue;
      std::fill(allowed[i].begin(), allowed[i].end(), 0);
      for (int c : list) {
        if (c < 0 || c >= k)
          throw std::invalid_argument(
              "count_tree_colourings: list colour out of range");
        allowed[i][c] = 1;
      }
    }
  }

  CountTable table;
  table.vertices = m.verts;
  table.parent = m.parent;
  table.children = m.children;
  table.k = k;
  table.counts.assign(s, std::vector<BigInt>(k, 0));
  for (int i = s - 1; i >= 0; --i) {
    for (int c = 0; c < k; ++c) {
      if (!allowed[i][c]) continue;
      BigInt prod = 1;
      for (int j : m.children[i]) {
        BigInt branch = 0;
        for (int cc = 0; cc < k; ++cc)
          if (cc != c) branch += table.counts[j][cc];
        if (branch == 0) {
          prod = 0;
          break;
        }
        prod *= branch;
      }
      table.counts[i][c] = std::move(prod);
    }
  }
  table.total = 0;
  for (int c = 0; c < k; ++c) table.total += table.counts[0][c];
  return {table.total, std::move(table)};
}

ComponentColouring sample_tree_colouring(const CountTable& table,
                                         RandomStream& stream) {
  if (table.total == 0)
    throw uncolourable_error("tree component admits no proper list-colouring");
  const int s = static_cast<int>(table.vertices.size());
  const int k = table.k;
  std::vector<int> colour(s, -1);

  BigInt x = stream.uniform_bigint_below(table.total);
  {
    int c = 0;
    while (x >= table.counts[0][c]) {
      x -= table.counts[0][c];
      ++c;
    }
    colour[0] = c;
  }
  // preorder walk; each child drawn proportionally to its counts restricted
  // to colours different from the parent's
  for (int i = 0; i < s; ++i) {
    const int cp = colour[i];
    for (int j : table.children[i]) {
      BigInt sum = 0;
      for (int c = 0; c < k; ++c)
        if (c != cp) sum += table.counts[j][c];
      BigInt y = stream.uniform_bigint_below(sum);
      int c = 0;
      for (;;) {
        if (c != cp) {
          if (y < table.counts[j][c]) break;
          y -= table.counts[j][c];
        }
        ++c;
      }
      colour[j] = c;
    }
  }
  return {table.vertices, std::move(colour)};
}

BigInt component_colouring_count(const Graph& g,
                                 const std::vector<int>& vertices, int k,
                                 int c_max) {
  if (k < 1) throw std::invalid_argument("component_colouring_count: k < 1");
  const TreeModel m = build_component_model(g, vertices);
  return model_count(g, m, k, c_max);
}

ComponentColouring unrank_component_colouring(const Graph& g,
                                              const std::vector<int>& vertices,
                                              int k, int c_max,
                                              const BigInt& index) {
  const TreeModel m = build_component_model(g, vertices);
  std::vector<int> colour;
  model_unrank(m, k, c_max, index, colour);
  return {m.verts, std::move(colour)};
}

void for_each_component_colouring(
    const Graph& g, const std::vector<int>& vertices, int k, int c_max,
    const std::function<void(const std::vector<int>& sorted_vertices,
                             const std::vector<int>& colours)>& fn) {
  const TreeModel m = build_component_model(g, vertices);
  const auto beta = m.extra.size();
  if (static_cast<int>(beta) > c_max)
    throw too_cyclic_error("component too cyclic");
  const int s = static_cast<int>(m.verts.size());

  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  // preorder position -> position in the sorted vertex list
  std::vector<int> to_sorted(s);
  for (int i = 0; i < s; ++i)
    to_sorted[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), m.verts[i]) -
        sorted.begin());

  std::vector<int> colour, by_sorted(s);
  std::vector<int> forced(s, -1);
  SpineCounts dp;
  auto emit_all = [&]() {
    for (BigInt idx = 0; idx < dp.total; ++idx) {
      unrank_tree(dp, idx, colour);
      for (int i = 0; i < s; ++i) by_sorted[to_sorted[i]] = colour[i];
      fn(sorted, by_sorted);
    }
  };
  if (beta == 0) {
    dp.build(m, k, forced);
    emit_all();
    return;
  }
  for (ConditionedScan scan(m, k); !scan.done; scan.advance()) {
    scan.apply(forced);
    dp.build(m, k, forced);
    emit_all();
    scan.clear(forced);
  }
}

ComponentColouring sample_component_colouring(const Graph& g,
                                              const std::vector<int>& vertices,
                                              int k, RandomStream& stream,
                                              int c_max) {
  const TreeModel m = build_component_model(g, vertices);
  const BigInt total = model_count(g, m, k, c_max);
  if (total == 0)
    throw uncolourable_error("component admits no proper " +
                             std::to_string(k) + "-colouring");
  BigInt index = stream.uniform_bigint_below(total);
  std::vector<int> colour;
  model_unrank(m, k, c_max, std::move(index), colour);
  return {m.verts, std::move(colour)};
}

namespace {

// Brute-force exact-uniform fallback for tiny components over the cap.
ComponentColouring brute_force_component(const Graph& g,
                                         const std::vector<int>& vertices,
                                         int k, RandomStream& stream) {
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  const int s = static_cast<int>(sorted.size());
  auto local_of = [&sorted](int global) {
    return static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), global) -
        sorted.begin());
  };
  std::vector<std::vector<int>> adj(s);
  for (int i = 0; i < s; ++i)
    for (int w : g.neighbours(sorted[i])) adj[i].push_back(local_of(w));

  std::vector<std::vector<int>> proper;
  std::vector<int> cur(s, -1);
  int depth = 0;
  while (depth >= 0) {
    if (depth == s) {
      proper.push_back(cur);
      --depth;
      continue;
    }
    int c = cur[depth] + 1;
    bool placed = false;
    for (; c < k; ++c) {
      bool ok = true;
      for (int w : adj[depth])
        if (w < depth && cur[w] == c) {
          ok = false;
          break;
        }
      if (ok) {
        cur[depth] = c;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      if (depth < s) cur[depth] = -1;
    } else {
      cur[depth] = -1;
      --depth;
    }
  }
  if (proper.empty())
    throw uncolourable_error("component admits no proper colouring");
  const auto pick =
      stream.uniform_bigint_below(BigInt(proper.size())).convert_to<std::size_t>();
  return {sorted, proper[pick]};
}

}  // namespace

Colouring sample_base(const Graph& g0, int k, const RandomStream& stream,
                      int c_max, std::uint64_t* bits_consumed) {
  if (k < 1) throw std::invalid_argument("sample_base: k < 1");
  Colouring result;
  result.k = k;
  result.colour.assign(g0.n(), -1);

  for (const auto& comp : components(g0)) {
    const int lowest = comp.vertices.front();
    RandomStream sub =
        stream.substream(Phase::base, static_cast<std::uint64_t>(lowest));
    ComponentColouring cc;
    try {
      try {
        cc = sample_component_colouring(g0, comp.vertices, k, sub, c_max);
      } catch (const too_cyclic_error&) {
        if (std::pow(static_cast<double>(k),
                     static_cast<double>(comp.vertices.size())) > 2e6)
          throw too_cyclic_error(
              "component at vertex " + std::to_string(lowest) +
              " exceeds the cyclomatic cap and is too large to brute-force");
        cc = brute_force_component(g0, comp.vertices, k, sub);
      }
    } catch (const uncolourable_error&) {
      throw uncolourable_error("component at vertex " + std::to_string(lowest) +
                               " admits no proper " + std::to_string(k) +
                               "-colouring");
    }
    for (std::size_t i = 0; i < cc.vertices.size(); ++i)
      result.colour[cc.vertices[i]] = cc.colours[i];
    if (bits_consumed) *bits_consumed += sub.bits_consumed();
  }
  refresh_status(g0, result);
  return result;
}

}  // namespace kcol
