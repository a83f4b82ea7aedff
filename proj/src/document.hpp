#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collapse.hpp"
#include "graph.hpp"

namespace efg {

// Graph document, schema version 1. Parsing is strict: unknown fields,
// duplicates, and type mismatches are parse errors; rule breaches like
// negative costs or excess probability mass are left to validation.
Graph parse_graph_document(const std::string& text);
std::string serialize_graph_document(const Graph& graph);

struct CostTables {
  std::map<VertexId, double> state_costs;
  std::map<std::pair<VertexId, VertexId>, double> transition_costs;
};

CostTables parse_cost_document(const std::string& text);

struct PlanInput {
  std::vector<double> savings;
  std::vector<std::string> labels;
  std::optional<double> observed;
};

std::vector<PlanInput> parse_plans_document(const std::string& text);

std::string serialize_provenance(const CollapseProvenance& provenance);
CollapseProvenance parse_provenance(const std::string& text);

// Graphviz text with costs and probabilities as labels; vertices and
// edges appear in sorted order.
std::string export_dot(const Graph& graph);

}  // namespace efg
