#include <doctest.h>

#include <sstream>

#include "kcol/io.hpp"

using namespace kcol;

TEST_SUITE("io") {

TEST_CASE("graph document round-trip and canonical bytes") {
  const Graph g = Graph::from_edges(5, {{1, 3}, {0, 1}, {2, 4}});
  const std::string text = graph_to_json(g);
  CHECK(text == "{\"n\":5,\"edges\":[[0,1],[1,3],[2,4]]}\n");
  CHECK(graph_from_json(text) == g);
  // same graph presented in scrambled order parses to identical bytes
  const Graph g2 = graph_from_json("{\"edges\":[[3,1],[4,2],[1,0]],\"n\":5}");
  CHECK(graph_to_json(g2) == text);
}

TEST_CASE("graph document errors") {
  CHECK_THROWS_AS(graph_from_json("not json"), io_error);
  CHECK_THROWS_AS(graph_from_json("{\"n\":3}"), io_error);
  CHECK_THROWS_AS(graph_from_json("{\"n\":2,\"edges\":[[0,0]]}"), io_error);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), io_error);
}

TEST_CASE("schedule document round-trip") {
  const Graph c6 = Graph::from_edges(
      6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  const auto s = build_schedule(c6, 4);
  const auto parsed = schedule_from_json(schedule_to_json(s));
  CHECK(parsed.L == s.L);
  CHECK(parsed.base == s.base);
  CHECK(parsed.deletions == s.deletions);
  CHECK(schedule_replays_to(parsed, c6));
}

TEST_CASE("colouring lines") {
  std::ostringstream os;
  write_colouring_header(os, 3, 4, 9);
  Colouring c;
  c.colour = {2, 0, 3};
  c.k = 4;
  write_colouring_line(os, c);
  CHECK(os.str() == "# n=3 k=4 seed=9\n2,0,3\n");
}

TEST_CASE("step records serialize as line-delimited json") {
  RunLog log;
  StepRecord rec;
  rec.i = 0;
  rec.bad = true;
  rec.q = 2;
  rec.component_size = 5;
  rec.resolved = false;
  log.steps.push_back(rec);
  rec.i = 1;
  rec.bad = false;
  rec.q.reset();
  rec.component_size = 0;
  rec.resolved = true;
  log.steps.push_back(rec);
  std::ostringstream os;
  write_step_records(os, log);
  CHECK(os.str() ==
        "{\"i\":0,\"bad\":true,\"q\":2,\"component_size\":5,"
        "\"resolved\":false}\n"
        "{\"i\":1,\"bad\":false,\"q\":null,\"component_size\":0,"
        "\"resolved\":true}\n");
}

}  // TEST_SUITE
