#include "kcol/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace kcol {

std::string graph_to_json(const Graph& g) {
  std::ostringstream os;
  os << "{\"n\":" << g.n() << ",\"edges\":[";
  bool first = true;
  for (const auto& [u, v] : g.edges()) {
    if (!first) os << ",";
    first = false;
    os << "[" << u << "," << v << "]";
  }
  os << "]}\n";
  return os.str();
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("graph document is not valid JSON: ") +
                   e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
    throw io_error("graph document must contain \"n\" and \"edges\"");
  const int n = doc.at("n").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw io_error("graph edge entries must be [u,v] pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw io_error(std::string("invalid graph document: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  out << content;
  if (!out) throw io_error("write failed for " + path);
}

Graph load_graph(const std::string& path) {
  return graph_from_json(read_file(path));
}

void save_graph(const Graph& g, const std::string& path) {
  write_file(path, graph_to_json(g));
}

std::string schedule_to_json(const DeletionSchedule& s) {
  std::ostringstream os;
  os << "{\"L\":" << s.L << ",\"base\":";
  std::string base = graph_to_json(s.base);
  base.pop_back();  // inner document carries no newline
  os << base << ",\"deletions\":[";
  bool first = true;
  for (const auto& [v, u] : s.deletions) {
    if (!first) os << ",";
    first = false;
    os << "[" << v << "," << u << "]";
  }
  os << "]}\n";
  return os.str();
}

DeletionSchedule schedule_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("schedule document is not valid JSON: ") +
                   e.what());
  }
  if (!doc.is_object() || !doc.contains("L") || !doc.contains("base") ||
      !doc.contains("deletions"))
    throw io_error("schedule document must contain L, base and deletions");
  DeletionSchedule s;
  s.L = doc.at("L").get<int>();
  s.base = graph_from_json(doc.at("base").dump());
  for (const auto& e : doc.at("deletions")) {
    if (!e.is_array() || e.size() != 2)
      throw io_error("schedule deletions must be [v,u] pairs");
    s.deletions.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  s.source_n = s.base.n();
  return s;
}

DeletionSchedule load_schedule(const std::string& path) {
  return schedule_from_json(read_file(path));
}

void save_schedule(const DeletionSchedule& s, const std::string& path) {
  write_file(path, schedule_to_json(s));
}

void write_colouring_header(std::ostream& os, int n, int k,
                            std::uint64_t seed) {
  os << "# n=" << n << " k=" << k << " seed=" << seed << "\n";
}

void write_colouring_line(std::ostream& os, const Colouring& c) {
  for (std::size_t i = 0; i < c.colour.size(); ++i) {
    if (i) os << ",";
    os << c.colour[i];
  }
  os << "\n";
}

void write_step_records(std::ostream& os, const RunLog& log) {
  for (const auto& rec : log.steps) {
    os << "{\"i\":" << rec.i << ",\"bad\":" << (rec.bad ? "true" : "false")
       << ",\"q\":";
    if (rec.q)
      os << *rec.q;
    else
      os << "null";
    os << ",\"component_size\":" << rec.component_size
       << ",\"resolved\":" << (rec.resolved ? "true" : "false") << "}\n";
  }
}

void write_run_footer(std::ostream& os, const AggregateLog& agg) {
  os << "{\"summary\":{\"runs\":" << agg.runs << ",\"steps\":"
     << agg.steps_total << ",\"bad\":" << agg.bad_total
     << ",\"unresolved\":" << agg.unresolved_total
     << ",\"palette_exhausted\":" << agg.palette_exhausted_total
     << ",\"random_bits\":" << agg.random_bits_total << ",\"L\":" << agg.L
     << ",\"seconds\":" << agg.seconds_total << "}}\n";
}

void write_suite_report(std::ostream& os, const SuiteResult& result) {
  for (const auto& rec : result.records)
    os << (rec.pass ? "pass" : "FAIL") << "  " << result.suite << "  "
       << rec.name << "  " << rec.values << "\n";
  os << "suite " << result.suite << ": " << result.records.size()
     << " checks, " << result.failures() << " failures\n";
}

void write_decay_csv(std::ostream& os, const PathDecayReport& report) {
  os << "l,gamma_mean,stderr\n";
  for (const auto& p : report.points)
    os << p.l << "," << p.mean << "," << p.stderr_mean << "\n";
  if (report.ratio) {
    os << "# fitted_ratio=" << *report.ratio;
    if (report.ratio_lo && report.ratio_hi)
      os << " ci95=[" << *report.ratio_lo << "," << *report.ratio_hi << "]";
    os << "\n";
  }
}

}  // namespace kcol
