#include "traces.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "errors.hpp"

namespace efg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return "";
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
  fail(Errc::parse, "line " + std::to_string(line) + ": " + message);
}

double parse_number(const std::string& field, std::size_t line, const char* what) {
  const std::string text = trim(field);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    fail_line(line, std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

TraceSet parse_traces(const std::string& text) {
  TraceSet set;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 4) {
      fail_line(line_no, "expected 4 comma-separated fields, got " +
                             std::to_string(fields.size()));
    }

    TraceRun run;
    run.run_id = trim(fields[0]);
    if (run.run_id.empty()) {
      fail_line(line_no, "empty run id");
    }

    const std::string energy = trim(fields[1]);
    if (!energy.empty()) {
      double value = parse_number(energy, line_no, "energy");
      if (value < 0.0) {
        fail_line(line_no, "negative energy '" + energy + "'");
      }
      run.total_energy = value;
    }

    for (const std::string& part : split(fields[2], ';')) {
      const std::string pair = trim(part);
      if (pair.empty()) {
        continue;
      }
      std::size_t eq = pair.find('=');
      if (eq == std::string::npos) {
        fail_line(line_no, "bad metric '" + pair + "'");
      }
      const std::string name = trim(pair.substr(0, eq));
      if (name.empty()) {
        fail_line(line_no, "bad metric '" + pair + "'");
      }
      double value = parse_number(pair.substr(eq + 1), line_no, "metric value");
      if (!run.metrics.emplace(name, value).second) {
        fail_line(line_no, "duplicate metric '" + name + "'");
      }
    }

    for (const std::string& part : split(fields[3], '>')) {
      const std::string vertex = trim(part);
      if (vertex.empty()) {
        fail_line(line_no, "empty vertex id in visit sequence");
      }
      run.visit_sequence.push_back(vertex);
      set.universe.insert(vertex);
    }
    if (run.visit_sequence.empty()) {
      fail_line(line_no, "empty visit sequence");
    }
    set.runs.push_back(std::move(run));
  }
  return set;
}

EstimatedGraph estimate_graph(const TraceSet& traces,
                              const std::map<VertexId, double>& state_costs,
                              const std::map<std::pair<VertexId, VertexId>, double>&
                                  transition_costs) {
  if (traces.runs.empty()) {
    fail(Errc::empty_trace_set, "trace set is empty");
  }

  std::set<VertexId> vertices = traces.universe;
  std::map<std::pair<VertexId, VertexId>, std::uint64_t> transitions;
  std::map<VertexId, std::uint64_t> departures;
  std::map<VertexId, std::uint64_t> first_counts;
  std::set<VertexId> last_observed;
  for (const TraceRun& run : traces.runs) {
    const auto& seq = run.visit_sequence;
    ++first_counts[seq.front()];
    last_observed.insert(seq.back());
    for (const VertexId& v : seq) {
      vertices.insert(v);
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      ++transitions[{seq[i], seq[i + 1]}];
      ++departures[seq[i]];
    }
  }

  std::vector<std::string> warnings;
  std::set<VertexId> terminals;
  for (const VertexId& v : last_observed) {
    if (departures.count(v) == 0) {
      terminals.insert(v);
    } else {
      warnings.push_back("vertex '" + v +
                         "' observed terminal and departing; dropping terminal status");
    }
  }

  GraphBuilder builder;
  for (const VertexId& v : vertices) {
    auto it = state_costs.find(v);
    if (it == state_costs.end()) {
      warnings.push_back("no state cost for '" + v + "'; defaulting to 0");
      builder.add_vertex(v, 0.0);
    } else {
      builder.add_vertex(v, it->second);
    }
  }
  for (const auto& [edge, count] : transitions) {
    double transition_cost = 0.0;
    auto it = transition_costs.find(edge);
    if (it == transition_costs.end()) {
      warnings.push_back("no transition cost for " + edge.first + "->" + edge.second +
                         "; defaulting to 0");
    } else {
      transition_cost = it->second;
    }
    double probability =
        static_cast<double>(count) / static_cast<double>(departures.at(edge.first));
    builder.add_edge(edge.first, edge.second, transition_cost, probability);
  }

  // Most frequent first vertex wins the entry; first_counts iterates in
  // id order, so ties keep the lexicographically smallest.
  VertexId entry;
  std::uint64_t best = 0;
  for (const auto& [v, count] : first_counts) {
    if (count > best) {
      best = count;
      entry = v;
    }
  }
  builder.set_entry(entry);
  for (const VertexId& t : terminals) {
    builder.add_terminal(t);
  }
  if (terminals.empty()) {
    warnings.push_back("no terminal vertex observed; estimated graph fails validation");
  }
  return EstimatedGraph{builder.build(), std::move(warnings)};
}

}  // namespace efg
