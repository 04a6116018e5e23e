#pragma once

#include <string>
#include <vector>

#include "kcol/graph.hpp"

namespace kcol {

struct NamedGraph {
  std::string name;
  Graph graph;
};

// Small-graph corpus (n <= 8) used by the lemma-level checks: paths, cycles,
// trees, unicyclic and bicyclic shapes, bipartite and dense graphs, and a
// few disconnected ones.
const std::vector<NamedGraph>& fixture_corpus();

// Forests and unicyclic graphs up to n = 10, the class the base sampler must
// colour exactly uniformly.
const std::vector<NamedGraph>& base_fixture_corpus();

// Fixtures paired with a threshold that yields a short deletion schedule
// (r <= 3) for whole-pipeline distribution checks.
struct ScheduledFixture {
  std::string name;
  Graph graph;
  int L;
};
const std::vector<ScheduledFixture>& scheduled_fixture_corpus();

// All connected graphs on at most max_n vertices, one representative per
// isomorphism class (max_n <= 7; the n = 6 tier already has 112 classes).
std::vector<Graph> connected_graphs_up_to_iso(int max_n);

}  // namespace kcol
