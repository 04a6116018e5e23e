#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "kcol/colouring.hpp"
#include "kcol/graph.hpp"
#include "kcol/rng.hpp"

namespace kcol {

enum class Verdict { good, bad };

// Relative to the deleted edge {v, u}: bad iff both endpoints share a colour.
inline Verdict classify(const Colouring& x, int v, int u) {
  return x.colour[v] == x.colour[u] ? Verdict::bad : Verdict::good;
}

// Maximal connected induced subgraph containing v whose vertices are coloured
// c = x(v) or q, split into its two colour classes.
struct DisagreementComponent {
  int root = -1;
  int colour_c = -1;
  int colour_q = -1;
  std::vector<int> class_c;  // coloured c; root first
  std::vector<int> class_q;  // coloured q
  bool contains_u = false;
  std::size_t visited = 0;  // distinct vertices examined by the search

  std::size_t size() const { return class_c.size() + class_q.size(); }
};

// Reusable search buffers; one instance per worker avoids an O(n) clear on
// every call.
struct SwitchScratch {
  std::vector<std::uint64_t> member_stamp;
  std::vector<std::uint64_t> seen_stamp;
  std::uint64_t epoch = 0;
  std::deque<int> queue;

  void ensure(int n) {
    if (static_cast<int>(member_stamp.size()) < n) {
      member_stamp.assign(n, 0);
      seen_stamp.assign(n, 0);
      epoch = 0;
    }
  }
};

// BFS from v over vertices coloured x(v) or q. `skip_edge` is ignored during
// traversal, for colourings that live on g minus that edge.
DisagreementComponent disagreement_component(
    const Graph& g, const Colouring& x, int v, int q, int u,
    std::optional<Edge> skip_edge = std::nullopt,
    SwitchScratch* scratch = nullptr);

// Same search over a raw adjacency structure; used where the current graph
// is maintained incrementally rather than as an immutable Graph.
DisagreementComponent disagreement_component(
    const std::vector<std::vector<int>>& adj, const Colouring& x, int v,
    int q, int u, std::optional<Edge> skip_edge = std::nullopt,
    SwitchScratch* scratch = nullptr);

// Exchange the colours of the component's two classes; all other vertices
// unchanged. Status is refreshed against g.
Colouring q_switch(const Graph& g, const Colouring& x,
                   const DisagreementComponent& comp);

// In-place class swap. Note this assigns by class membership, so applying
// it twice does NOT undo it; pair with undo_switch.
void apply_switch(Colouring& x, const DisagreementComponent& comp);
void undo_switch(Colouring& x, const DisagreementComponent& comp);

enum class StepMode { faithful, retry };

struct StepOutcome {
  Colouring colouring;
  bool was_bad = false;
  std::optional<int> chosen_q;
  bool resolved = true;
  int retries_used = 0;
  std::size_t component_size = 0;
  std::size_t visited = 0;
  std::vector<int> component_vertices;  // kept only for small components
};

// One restoration step for the edge {v, u} of g_next. A good colouring
// passes through untouched. A bad one gets a q-switch: faithful mode draws a
// single q uniformly from [k] minus the shared colour and accepts whatever
// results; retry mode draws q values without replacement, each attempt
// re-derived from the original colouring, until the switch separates v from
// u or the palette runs out.
StepOutcome step(const Graph& g_next, int v, int u, Colouring x,
                 RandomStream& stream, StepMode mode,
                 SwitchScratch* scratch = nullptr);

// Step over an incrementally maintained adjacency that does NOT yet contain
// the edge {v, u} (nor any edge restored later).
StepOutcome step_on(const std::vector<std::vector<int>>& adj_without_edge,
                    int v, int u, Colouring x, RandomStream& stream,
                    StepMode mode, SwitchScratch* scratch = nullptr);

}  // namespace kcol
