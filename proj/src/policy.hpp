#pragma once

#include <map>

#include "graph.hpp"
#include "paths.hpp"

namespace efg {

// Minimum-energy successor choice per non-terminal vertex. Each
// optimal_energy value is the path_energy of the policy-induced path
// from that vertex, so the entry value re-evaluates exactly.
struct OptimalPolicy {
  std::map<VertexId, VertexId> per_vertex;
  std::map<VertexId, double> optimal_energy;
  Path induced_path;
};

// Requires an acyclic graph in which every non-terminal vertex has at
// least one outgoing edge; ties pick the smallest successor id.
OptimalPolicy optimal_policy(const Graph& graph);

}  // namespace efg
