#include "kcol/switching.hpp"

#include <algorithm>
#include <stdexcept>

namespace kcol {

DisagreementComponent disagreement_component(
    const std::vector<std::vector<int>>& adj, const Colouring& x, int v,
    int q, int u, std::optional<Edge> skip_edge, SwitchScratch* scratch) {
  const int n = static_cast<int>(adj.size());
  if (v < 0 || v >= n)
    throw std::invalid_argument("disagreement_component: bad root");
  const int c = x.colour[v];
  if (q == c)
    throw std::invalid_argument(
        "disagreement_component: switch colour equals root colour");

  SwitchScratch local;
  SwitchScratch& sc = scratch ? *scratch : local;
  sc.ensure(n);
  const std::uint64_t epoch = ++sc.epoch;

  DisagreementComponent comp;
  comp.root = v;
  comp.colour_c = c;
  comp.colour_q = q;

  auto skips = [&](int a, int b) {
    if (!skip_edge) return false;
    const auto& [s1, s2] = *skip_edge;
    return (a == s1 && b == s2) || (a == s2 && b == s1);
  };

  sc.member_stamp[v] = epoch;
  sc.seen_stamp[v] = epoch;
  comp.visited = 1;
  comp.class_c.push_back(v);
  sc.queue.clear();
  sc.queue.push_back(v);
  while (!sc.queue.empty()) {
    const int a = sc.queue.front();
    sc.queue.pop_front();
    for (int b : adj[a]) {
      if (skips(a, b)) continue;
      if (sc.seen_stamp[b] != epoch) {
        sc.seen_stamp[b] = epoch;
        ++comp.visited;
      }
      if (sc.member_stamp[b] == epoch) continue;
      const int cb = x.colour[b];
      if (cb != c && cb != q) continue;
      sc.member_stamp[b] = epoch;
      (cb == c ? comp.class_c : comp.class_q).push_back(b);
      if (b == u) comp.contains_u = true;
      sc.queue.push_back(b);
    }
  }
  return comp;
}

DisagreementComponent disagreement_component(const Graph& g,
                                             const Colouring& x, int v, int q,
                                             int u,
                                             std::optional<Edge> skip_edge,
                                             SwitchScratch* scratch) {
  return disagreement_component(g.adjacency(), x, v, q, u, skip_edge, scratch);
}

void apply_switch(Colouring& x, const DisagreementComponent& comp) {
  for (int w : comp.class_c) x.colour[w] = comp.colour_q;
  for (int w : comp.class_q) x.colour[w] = comp.colour_c;
}

void undo_switch(Colouring& x, const DisagreementComponent& comp) {
  for (int w : comp.class_c) x.colour[w] = comp.colour_c;
  for (int w : comp.class_q) x.colour[w] = comp.colour_q;
}

Colouring q_switch(const Graph& g, const Colouring& x,
                   const DisagreementComponent& comp) {
  if (x.colour[comp.root] != comp.colour_c)
    throw std::invalid_argument("q_switch: component is stale");
  Colouring out = x;
  apply_switch(out, comp);
  refresh_status(g, out);
  return out;
}

namespace {

StepOutcome step_impl(const std::vector<std::vector<int>>& adj, int v, int u,
                      Colouring x, RandomStream& stream, StepMode mode,
                      std::optional<Edge> skip, SwitchScratch* scratch) {
  if (x.k < 2) throw std::invalid_argument("step: needs k >= 2");

  StepOutcome out;
  if (classify(x, v, u) == Verdict::good) {
    out.colouring = std::move(x);
    return out;
  }
  out.was_bad = true;

  const int c = x.colour[v];
  const int k = x.k;
  const Edge restored{std::min(v, u), std::max(v, u)};
  constexpr std::size_t kKeepComponentBelow = 10000;

  auto finish = [&](DisagreementComponent&& comp, int q, int retries) {
    apply_switch(x, comp);
    out.chosen_q = q;
    out.resolved = !comp.contains_u;
    out.retries_used = retries;
    out.component_size = comp.size();
    if (comp.size() < kKeepComponentBelow) {
      out.component_vertices = std::move(comp.class_c);
      out.component_vertices.insert(out.component_vertices.end(),
                                    comp.class_q.begin(), comp.class_q.end());
    }
    if (!out.resolved) x.witness = restored;
    out.colouring = std::move(x);
  };

  if (mode == StepMode::faithful) {
    const auto idx = static_cast<int>(stream.uniform_below(k - 1));
    const int q = idx < c ? idx : idx + 1;
    auto comp = disagreement_component(adj, x, v, q, u, skip, scratch);
    out.visited = comp.visited;
    finish(std::move(comp), q, 0);
    return out;
  }

  // retry: draw colours without replacement; every attempt re-derives from
  // the original colouring, so nothing is applied until a verdict is reached
  std::vector<int> remaining;
  remaining.reserve(k - 1);
  for (int q = 0; q < k; ++q)
    if (q != c) remaining.push_back(q);
  int attempts = 0;
  for (;;) {
    const auto j = stream.uniform_below(remaining.size());
    const int q = remaining[j];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(j));
    ++attempts;
    auto comp = disagreement_component(adj, x, v, q, u, skip, scratch);
    out.visited += comp.visited;
    if (!comp.contains_u || remaining.empty()) {
      finish(std::move(comp), q, attempts - 1);
      return out;
    }
  }
}

}  // namespace

StepOutcome step(const Graph& g_next, int v, int u, Colouring x,
                 RandomStream& stream, StepMode mode, SwitchScratch* scratch) {
  if (!g_next.has_edge(v, u))
    throw std::invalid_argument("step: {v,u} is not an edge of g_next");
  const Edge skip{std::min(v, u), std::max(v, u)};
  return step_impl(g_next.adjacency(), v, u, std::move(x), stream, mode, skip,
                   scratch);
}

StepOutcome step_on(const std::vector<std::vector<int>>& adj_without_edge,
                    int v, int u, Colouring x, RandomStream& stream,
                    StepMode mode, SwitchScratch* scratch) {
  return step_impl(adj_without_edge, v, u, std::move(x), stream, mode,
                   std::nullopt, scratch);
}

}  // namespace kcol
