#pragma once

#include "graph.hpp"

namespace efg {

// A proposed change of one vertex's state cost; old_cost must match the
// graph's current value.
struct NodeOptimization {
  VertexId vertex;
  double old_cost = 0.0;
  double new_cost = 0.0;
};

enum class ImpactMethod {
  path_enumeration,  // acyclic only: sums saving x occurrences over all paths
  visit_counts,      // saving x expected visits, works on cyclic graphs too
};

// Global expected saving of the change, in Joules.
double node_impact(const Graph& graph, const NodeOptimization& change, ImpactMethod method);

}  // namespace efg
