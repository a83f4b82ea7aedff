#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace efg {

struct TraceRun {
  std::string run_id;
  std::vector<VertexId> visit_sequence;
  std::optional<double> total_energy;
  std::map<std::string, double> metrics;
};

struct TraceSet {
  std::vector<TraceRun> runs;
  std::set<VertexId> universe;
};

// One run per line: `run_id,energy|empty,name=value;...,V1>V2>...`.
// Blank lines and lines starting with '#' are skipped. Parse failures
// report the 1-based line number.
TraceSet parse_traces(const std::string& text);

struct EstimatedGraph {
  Graph graph;
  std::vector<std::string> warnings;
};

// Frequency-estimated graph: P(v->w) = count(v->w) / count(v departs),
// entry is the most common first vertex (lexicographic ties), terminals
// are last-observed vertices with no departures. Missing cost entries
// default to 0 with a warning; a vertex observed both terminal and
// departing loses terminal status with a warning.
EstimatedGraph estimate_graph(const TraceSet& traces,
                              const std::map<VertexId, double>& state_costs,
                              const std::map<std::pair<VertexId, VertexId>, double>&
                                  transition_costs);

}  // namespace efg
