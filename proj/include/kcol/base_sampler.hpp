#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kcol/colouring.hpp"
#include "kcol/graph.hpp"
#include "kcol/rng.hpp"

namespace kcol {

struct uncolourable_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct too_cyclic_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Colour assignment restricted to one connected component.
struct ComponentColouring {
  std::vector<int> vertices;  // global ids
  std::vector<int> colours;   // aligned with vertices
};

// Rooted-tree counting table: counts[i][c] = number of proper list-colourings
// of the subtree rooted at local vertex i when i gets colour c.
// Vertices are stored in DFS preorder over a BFS tree rooted at the
// lowest-id vertex, so each subtree is a contiguous slice.
struct CountTable {
  std::vector<int> vertices;                // global ids, preorder
  std::vector<int> parent;                  // local index, -1 for the root
  std::vector<std::vector<int>> children;   // local indices
  std::vector<std::vector<BigInt>> counts;  // [local][colour]
  BigInt total = 0;
  int k = 0;
};

// Exact number of proper list-colourings of a tree component.
// `vertices` lists the component's vertices; lists[i] constrains
// vertices[i] (an empty list means all of [0, k)). Rejects cyclic input.
std::pair<BigInt, CountTable> count_tree_colourings(
    const Graph& g, const std::vector<int>& vertices,
    const std::vector<std::vector<int>>& lists, int k);

// Exactly uniform draw from a counting table: the root colour is drawn
// proportionally to its counts, then each child proportionally to its counts
// restricted to colours different from the parent's.
ComponentColouring sample_tree_colouring(const CountTable& table,
                                         RandomStream& stream);

// Exact count of proper k-colourings of one connected component with
// cyclomatic number beta <= c_max. Extra-edge endpoints are conditioned on
// joint colour assignments (at most k^(2 beta) tree counts).
BigInt component_colouring_count(const Graph& g,
                                 const std::vector<int>& vertices, int k,
                                 int c_max);

// The sampler's index bijection: maps index in [0, count) to the
// corresponding proper colouring of the component. Enumerating all indices
// recovers the sampler's exact output distribution.
ComponentColouring unrank_component_colouring(const Graph& g,
                                              const std::vector<int>& vertices,
                                              int k, int c_max,
                                              const BigInt& index);

// Walks the entire index range of one component, reusing the counting
// tables; colours are aligned with the component's vertices in ascending
// order. Feasible only when the count itself is small.
void for_each_component_colouring(
    const Graph& g, const std::vector<int>& vertices, int k, int c_max,
    const std::function<void(const std::vector<int>& sorted_vertices,
                             const std::vector<int>& colours)>& fn);

// Exactly uniform proper colouring of one component: one uniform index below
// the exact count, then unranked.
ComponentColouring sample_component_colouring(const Graph& g,
                                              const std::vector<int>& vertices,
                                              int k, RandomStream& stream,
                                              int c_max);

// Independent exactly uniform colouring per component of g0; the
// concatenation is exactly uniform over proper colourings of g0.
// Components over the cyclomatic cap fall back to brute-force enumeration
// when small enough, otherwise the error is propagated with the component
// identified. `stream` is the run-level stream; each component draws from
// the substream labelled by its lowest vertex id.
Colouring sample_base(const Graph& g0, int k, const RandomStream& stream,
                      int c_max, std::uint64_t* bits_consumed = nullptr);

}  // namespace kcol
