#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "kcol/colouring.hpp"
#include "kcol/graph.hpp"
#include "kcol/pipeline.hpp"
#include "kcol/schedule.hpp"
#include "kcol/suites.hpp"
#include "kcol/verify.hpp"

namespace kcol {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical graph document: {"n":N,"edges":[[u,v],...]} with u < v and edges
// sorted lexicographically. Byte-stable for a given graph.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

// {"L":L,"base":<graph>,"deletions":[[v,u],...]} in replay order.
std::string schedule_to_json(const DeletionSchedule& s);
DeletionSchedule schedule_from_json(const std::string& text);
DeletionSchedule load_schedule(const std::string& path);
void save_schedule(const DeletionSchedule& s, const std::string& path);

// Colouring samples: one comma-separated line per sample, preceded by a
// header recording n, k and the seed.
void write_colouring_header(std::ostream& os, int n, int k,
                            std::uint64_t seed);
void write_colouring_line(std::ostream& os, const Colouring& c);

// Run log: one JSON record per step plus an aggregate footer.
void write_step_records(std::ostream& os, const RunLog& log);
void write_run_footer(std::ostream& os, const AggregateLog& agg);

void write_suite_report(std::ostream& os, const SuiteResult& result);

// (l, mean count, stderr) rows plus the fitted ratio as a trailing comment.
void write_decay_csv(std::ostream& os, const PathDecayReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kcol
