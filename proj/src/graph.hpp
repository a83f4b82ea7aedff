#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace efg {

// Vertices are identified by opaque strings, unique within a graph.
using VertexId = std::string;

struct EdgeData {
  double transition_cost = 0.0;
  std::optional<double> probability;

  bool operator==(const EdgeData&) const = default;
};

struct Violation {
  std::string message;
};

class Graph;

// Accumulates the tuple pieces and produces an immutable Graph. The builder
// accepts almost any state so that rule breaches (negative costs, dangling
// edge endpoints, bad probability mass) surface as validation violations
// rather than construction failures. Only duplicates are rejected here,
// because the storage cannot represent them.
class GraphBuilder {
public:
  GraphBuilder& add_vertex(const VertexId& id, double state_cost);
  GraphBuilder& add_edge(const VertexId& from, const VertexId& to, double transition_cost);
  GraphBuilder& add_edge(const VertexId& from, const VertexId& to, double transition_cost,
                         double probability);
  GraphBuilder& add_edge(const VertexId& from, const VertexId& to, EdgeData data);
  GraphBuilder& set_entry(const VertexId& id);
  GraphBuilder& add_terminal(const VertexId& id);

  Graph build() const;

private:
  GraphBuilder& add_edge_impl(const VertexId& from, const VertexId& to, EdgeData data);

  std::map<VertexId, double> vertex_costs_;
  std::map<VertexId, std::map<VertexId, EdgeData>> out_;
  VertexId entry_;
  std::set<VertexId> terminals_;
};

// Immutable directed state-transition graph with per-state and per-transition
// energy costs and optional transition probabilities. Validation runs once at
// construction; every read is safe to call concurrently afterwards.
class Graph {
public:
  const std::map<VertexId, double>& vertex_costs() const { return vertex_costs_; }
  // Outgoing adjacency, keyed by source vertex; inner maps are sorted by
  // target id. Vertices without outgoing edges have no entry here.
  const std::map<VertexId, std::map<VertexId, EdgeData>>& adjacency() const { return out_; }
  const VertexId& entry() const { return entry_; }
  const std::set<VertexId>& terminals() const { return terminals_; }

  bool has_vertex(const VertexId& id) const { return vertex_costs_.count(id) != 0; }
  bool is_terminal(const VertexId& id) const { return terminals_.count(id) != 0; }
  // State cost; throws unknown-vertex for ids outside the vertex set.
  double state_cost(const VertexId& id) const;
  // Edge lookup; nullptr when the ordered pair is not an edge.
  const EdgeData* edge(const VertexId& from, const VertexId& to) const;

  std::size_t vertex_count() const { return vertex_costs_.size(); }
  std::size_t edge_count() const;

  // True when every edge carries a probability. Mixed graphs are valid for
  // deterministic analysis only.
  bool is_stochastic() const;

  const std::vector<Violation>& violations() const { return violations_; }
  bool is_valid() const { return violations_.empty(); }
  // Throws invalid-graph with the first violation message.
  void require_valid() const;

  // Copy with one state cost replaced; the result is re-validated.
  Graph with_vertex_cost(const VertexId& id, double state_cost) const;

  bool operator==(const Graph& other) const;

private:
  friend class GraphBuilder;
  Graph() = default;

  std::map<VertexId, double> vertex_costs_;
  std::map<VertexId, std::map<VertexId, EdgeData>> out_;
  VertexId entry_;
  std::set<VertexId> terminals_;
  std::vector<Violation> violations_;
};

// Checks every tuple invariant and reports each breach with the offending
// vertex or edge. A graph with an empty result satisfies all of them.
std::vector<Violation> validate_graph(const Graph& graph);

}  // namespace efg
