#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kcol/graph.hpp"

namespace kcol {

// Edge-deletion schedule: base graph plus deletions in replay order.
// Replaying deletions[0], deletions[1], ... onto `base` rebuilds the input
// graph; the graph just before deletions[i] is applied is G_i, and
// deletions[i] = {v_i, u_i}. Construction guarantees v_i, u_i non-adjacent
// in G_i with distance >= L - 1.
struct DeletionSchedule {
  Graph base;                    // G_0
  std::vector<Edge> deletions;   // replay order
  int L = 3;
  int source_n = 0;
  std::optional<double> source_d;  // provenance when known

  int r() const { return static_cast<int>(deletions.size()); }
};

enum class ComponentKind { isolated_vertex, tree, unicyclic_short_cycle, other };

struct ScheduleReport {
  int r = 0;
  std::int64_t max_component_cyclomatic = 0;
  // census of base-graph components by kind
  std::int64_t isolated_vertices = 0;
  std::int64_t trees = 0;
  std::int64_t unicyclic_short_cycle = 0;
  std::int64_t other_components = 0;
  // minimum over i of dist(G_i, v_i, u_i); nullopt when r = 0. Distances are
  // measured with a cap; values at or beyond the cap are reported as the cap.
  std::optional<int> min_pair_distance;
  int distance_cap = 0;
  int distance_violations = 0;   // pairs with distance < L - 1
  int adjacency_violations = 0;  // pairs already adjacent in G_i
  int long_cycle_edges_in_base = 0;
  // r versus the reference bound (1 + n^{-1/3}) * d * n / 2 (needs source_d)
  std::optional<double> r_bound;
  bool r_within_bound = true;

  std::int64_t component_total() const {
    return isolated_vertices + trees + unicyclic_short_cycle +
           other_components;
  }
};

// L = max(3, ceil(ln n / (9 ln d))). Rejects d <= 1.
int default_threshold(int n, double d);

// Repeatedly deletes the canonically-first edge of the current graph whose
// shortest containing cycle has length >= L, until no such edge remains.
// Deterministic.
DeletionSchedule build_schedule(const Graph& g, int L);

// Recomputes every schedule invariant from scratch by replaying deletions.
// Violations are reported, not thrown.
ScheduleReport audit_schedule(const DeletionSchedule& s);

// Replay check: does base + deletions reproduce exactly g's edge set?
bool schedule_replays_to(const DeletionSchedule& s, const Graph& g);

}  // namespace kcol
