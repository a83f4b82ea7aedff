#include "policy.hpp"

#include "errors.hpp"

namespace efg {

OptimalPolicy optimal_policy(const Graph& graph) {
  graph.require_valid();
  std::vector<VertexId> order = topological_order(graph);

  OptimalPolicy policy;
  std::map<VertexId, double> dp;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId& v = *it;
    if (graph.is_terminal(v)) {
      dp[v] = graph.vertex_costs().at(v);
      continue;
    }
    auto adj = graph.adjacency().find(v);
    if (adj == graph.adjacency().end() || adj->second.empty()) {
      fail(Errc::dead_end, "non-terminal vertex '" + v + "' has no outgoing edge");
    }
    double best = 0.0;
    const VertexId* chosen = nullptr;
    for (const auto& [to, data] : adj->second) {
      double candidate = data.transition_cost + dp.at(to);
      if (chosen == nullptr || candidate < best) {
        best = candidate;
        chosen = &to;  // successors iterate in id order, so ties keep the smallest
      }
    }
    dp[v] = graph.vertex_costs().at(v) + best;
    policy.per_vertex[v] = *chosen;
  }

  // Evaluate every vertex through its induced path so the reported
  // energies are exactly what the chosen paths cost.
  for (const auto& [v, cost] : graph.vertex_costs()) {
    Path path{v};
    VertexId cur = v;
    while (!graph.is_terminal(cur)) {
      cur = policy.per_vertex.at(cur);
      path.push_back(cur);
    }
    policy.optimal_energy[v] = path_energy(graph, path);
    if (v == graph.entry()) {
      policy.induced_path = std::move(path);
    }
  }
  return policy;
}

}  // namespace efg
