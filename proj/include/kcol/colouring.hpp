#pragma once

#include <optional>
#include <vector>

#include "kcol/graph.hpp"

namespace kcol {

// Total colour assignment over the vertices of some graph, colours in [0, k).
// `witness` holds a monochromatic edge when the assignment is known improper;
// nullopt means proper (relative to whichever graph it was checked against).
struct Colouring {
  std::vector<int> colour;
  int k = 0;
  std::optional<Edge> witness;

  bool proper() const { return !witness.has_value(); }

  int operator[](int v) const { return colour[v]; }
};

// First monochromatic edge of g under the assignment, or nullopt.
inline std::optional<Edge> find_monochromatic_edge(
    const Graph& g, const std::vector<int>& colour) {
  for (const auto& e : g.edges())
    if (colour[e.first] == colour[e.second]) return e;
  return std::nullopt;
}

inline void refresh_status(const Graph& g, Colouring& c) {
  c.witness = find_monochromatic_edge(g, c.colour);
}

}  // namespace kcol
