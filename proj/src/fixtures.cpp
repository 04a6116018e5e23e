#include "kcol/fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace kcol {

namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(e));
}

Graph star(int n) {  // centre 0, n-1 leaves
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph::from_edges(n, std::move(e));
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, std::move(e));
}

Graph from(int n, std::vector<Edge> e) {
  return Graph::from_edges(n, std::move(e));
}

}  // namespace

const std::vector<NamedGraph>& fixture_corpus() {
  static const std::vector<NamedGraph> corpus = [] {
    std::vector<NamedGraph> c;
    c.push_back({"path_2", path(2)});
    c.push_back({"path_3", path(3)});
    c.push_back({"path_4", path(4)});
    c.push_back({"path_5", path(5)});
    c.push_back({"path_7", path(7)});
    c.push_back({"cycle_3", cycle(3)});
    c.push_back({"cycle_4", cycle(4)});
    c.push_back({"cycle_5", cycle(5)});
    c.push_back({"cycle_6", cycle(6)});
    c.push_back({"cycle_7", cycle(7)});
    c.push_back({"cycle_8", cycle(8)});
    c.push_back({"star_4", star(4)});
    c.push_back({"star_6", star(6)});
    // centre 0, three legs of length 2
    c.push_back({"spider_3x2", from(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4},
                                        {0, 5}, {5, 6}})});
    c.push_back({"caterpillar_7",
                 from(7, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {2, 5}, {3, 6}})});
    c.push_back({"binary_tree_7",
                 from(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}})});
    c.push_back({"complete_4", complete(4)});
    c.push_back({"diamond", from(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}})});
    c.push_back({"k_2_3", from(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3},
                                   {1, 4}})});
    c.push_back({"k_3_3", from(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4},
                                   {1, 5}, {2, 3}, {2, 4}, {2, 5}})});
    c.push_back({"book_2", from(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}})});
    c.push_back({"bowtie", from(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4},
                                    {3, 4}})});
    c.push_back({"tadpole_3_2", from(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3},
                                         {3, 4}})});
    c.push_back({"tadpole_4_2", from(6, {{0, 1}, {1, 2}, {2, 3}, {0, 3},
                                         {3, 4}, {4, 5}})});
    c.push_back({"c5_chord", from(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                                      {0, 2}})});
    c.push_back({"prism_6", from(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5},
                                     {3, 5}, {0, 3}, {1, 4}, {2, 5}})});
    c.push_back({"wheel_6", from(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                                     {1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}})});
    c.push_back({"cube_8", from(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3},
                                    {4, 5}, {5, 6}, {6, 7}, {4, 7},
                                    {0, 4}, {1, 5}, {2, 6}, {3, 7}})});
    c.push_back({"c6_pendant", from(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                        {4, 5}, {0, 5}, {3, 6}})});
    // two hubs (0, 1) joined by paths of lengths 2, 2, 3
    c.push_back({"theta_2_2_3", from(6, {{0, 2}, {2, 1}, {0, 3}, {3, 1},
                                         {0, 4}, {4, 5}, {5, 1}})});
    c.push_back({"two_comp_p3_p2", from(5, {{0, 1}, {1, 2}, {3, 4}})});
    c.push_back({"two_comp_c3_p3", from(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4},
                                            {4, 5}})});
    c.push_back({"two_comp_c4_c3", from(7, {{0, 1}, {1, 2}, {2, 3}, {0, 3},
                                            {4, 5}, {5, 6}, {4, 6}})});
    c.push_back({"edge_plus_isolated", from(3, {{0, 1}})});
    return c;
  }();
  return corpus;
}

const std::vector<NamedGraph>& base_fixture_corpus() {
  static const std::vector<NamedGraph> corpus = [] {
    std::vector<NamedGraph> c;
    c.push_back({"single_vertex", from(1, {})});
    c.push_back({"path_10", path(10)});
    c.push_back({"star_10", star(10)});
    c.push_back({"broom_10", from(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                       {4, 5}, {4, 6}, {4, 7}, {4, 8},
                                       {4, 9}})});
    c.push_back({"tree_10", from(10, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5},
                                      {4, 6}, {4, 7}, {5, 8}, {8, 9}})});
    c.push_back({"forest_p4_p3_p2", from(9, {{0, 1}, {1, 2}, {2, 3}, {4, 5},
                                             {5, 6}, {7, 8}})});
    c.push_back({"forest_with_isolated", from(7, {{0, 1}, {1, 2}, {2, 3},
                                                  {3, 4}})});
    c.push_back({"cycle_9", cycle(9)});
    c.push_back({"cycle_10", cycle(10)});
    c.push_back({"tadpole_4_6", from(10, {{0, 1}, {1, 2}, {2, 3}, {0, 3},
                                          {3, 4}, {4, 5}, {5, 6}, {6, 7},
                                          {7, 8}, {8, 9}})});
    c.push_back({"c6_two_pendants", from(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                             {4, 5}, {0, 5}, {1, 6}, {4, 7}})});
    c.push_back({"unicyclic_8", from(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4},
                                         {0, 4}, {2, 5}, {5, 6}, {5, 7}})});
    c.push_back({"triangle_pendants", from(6, {{0, 1}, {1, 2}, {0, 2}, {0, 3},
                                               {1, 4}, {2, 5}})});
    return c;
  }();
  return corpus;
}

const std::vector<ScheduledFixture>& scheduled_fixture_corpus() {
  static const std::vector<ScheduledFixture> corpus = [] {
    std::vector<ScheduledFixture> c;
    for (const auto& [name, g] : fixture_corpus()) {
      if (name == "cycle_6" || name == "cycle_7") {
        c.push_back({name + "_L4", g, 4});
      } else if (name == "complete_4" || name == "bowtie" ||
                 name == "theta_2_2_3" || name == "c5_chord" ||
                 name == "two_comp_c4_c3" || name == "tadpole_3_2" ||
                 name == "prism_6" || name == "book_2") {
        c.push_back({name + "_L3", g, 3});
      }
    }
    return c;
  }();
  return corpus;
}

std::vector<Graph> connected_graphs_up_to_iso(int max_n) {
  if (max_n < 1 || max_n > 7)
    throw std::invalid_argument("connected_graphs_up_to_iso: supports 1..7");

  std::vector<Graph> result;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = n * (n - 1) / 2;
    auto pair_index = [n](int i, int j) {
      // i < j
      return i * (2 * n - i - 1) / 2 + (j - i - 1);
    };
    std::vector<std::vector<int>> perms;
    {
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    }

    std::vector<char> seen_canonical(std::size_t{1} << pairs, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      // connectivity
      {
        std::vector<int> comp(n, -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        int reached = 1;
        while (!stack.empty()) {
          const int a = stack.back();
          stack.pop_back();
          for (int b = 0; b < n; ++b) {
            if (a == b || comp[b] != -1) continue;
            const int i = std::min(a, b), j = std::max(a, b);
            if (!(mask >> pair_index(i, j) & 1)) continue;
            comp[b] = 0;
            ++reached;
            stack.push_back(b);
          }
        }
        if (reached != n) continue;
      }
      // canonical form: minimum relabelled mask
      std::uint64_t canonical = mask;
      for (const auto& p : perms) {
        std::uint64_t relabelled = 0;
        for (int i = 0; i < n && relabelled <= canonical; ++i)
          for (int j = i + 1; j < n; ++j) {
            if (!(mask >> pair_index(i, j) & 1)) continue;
            const int a = std::min(p[i], p[j]), b = std::max(p[i], p[j]);
            relabelled |= std::uint64_t{1} << pair_index(a, b);
          }
        canonical = std::min(canonical, relabelled);
      }
      if (seen_canonical[canonical]) continue;
      seen_canonical[canonical] = 1;
      if (canonical != mask) continue;  // emit each class at its canonical mask
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (mask >> pair_index(i, j) & 1) edges.emplace_back(i, j);
      result.push_back(Graph::from_edges(n, std::move(edges)));
    }
  }
  return result;
}

}  // namespace kcol
