#pragma once

#include <set>

#include "graph.hpp"

namespace efg {

struct SubgraphSelection {
  std::set<VertexId> members;
  VertexId macro_id;
};

// Everything needed to invert a collapse exactly: member costs, the
// internal edges folded into the macro cost, and the original member
// endpoint of every rewired boundary edge (unique per external vertex
// and direction under the single-port rule).
struct CollapseProvenance {
  VertexId macro_id;
  VertexId original_entry;
  std::map<VertexId, double> member_costs;
  std::map<VertexId, std::map<VertexId, EdgeData>> internal_edges;
  std::map<VertexId, std::pair<VertexId, EdgeData>> incoming;  // external -> member
  std::map<VertexId, std::pair<VertexId, EdgeData>> outgoing;  // external -> member
  std::set<VertexId> member_terminals;
};

struct CollapseResult {
  Graph graph;
  CollapseProvenance provenance;
};

// Replaces the member sub-graph with one macro vertex whose cost is the
// sum of member state costs plus internal transition costs; boundary
// edges keep their cost and probability. Rejects selections where two
// boundary edges would merge into one (macro, external) pair.
CollapseResult collapse(const Graph& graph, const SubgraphSelection& selection);

// Exact inverse of collapse given its provenance record.
Graph expand(const Graph& graph, const CollapseProvenance& provenance);

// Sum of all state costs plus all transition costs, compensated.
double total_graph_energy(const Graph& graph);

// The macro-cost sum for a member set without performing the collapse.
double subgraph_cost(const Graph& graph, const std::set<VertexId>& members);

}  // namespace efg
