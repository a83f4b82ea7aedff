#include "bounds.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "errors.hpp"

namespace efg {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct DpCell {
  double best_min = kUnreachable;
  double best_max = -kUnreachable;
  VertexId arg_min;
  VertexId arg_max;
};

Path follow(const VertexId& start, const std::map<VertexId, DpCell>& cells, bool minimum) {
  Path path{start};
  VertexId cur = start;
  while (true) {
    const DpCell& cell = cells.at(cur);
    const VertexId& next = minimum ? cell.arg_min : cell.arg_max;
    if (next.empty()) {
      break;  // terminal
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

}  // namespace

EnergyBounds energy_bounds(const Graph& graph) {
  graph.require_valid();
  std::vector<VertexId> order = topological_order(graph);

  // Reverse topological sweep: cell values are extremal suffix energies
  // from each vertex to a terminal; unreachable stays infinite.
  std::map<VertexId, DpCell> cells;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    cells.emplace(id, DpCell{});
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId& v = *it;
    DpCell& cell = cells.at(v);
    if (graph.is_terminal(v)) {
      cell.best_min = graph.vertex_costs().at(v);
      cell.best_max = cell.best_min;
      continue;
    }
    auto adj = graph.adjacency().find(v);
    if (adj == graph.adjacency().end()) {
      continue;  // dead end, no path through here
    }
    const double state_cost = graph.vertex_costs().at(v);
    for (const auto& [to, data] : adj->second) {
      const DpCell& succ = cells.at(to);
      if (std::isinf(succ.best_min)) {
        continue;
      }
      double lo = state_cost + data.transition_cost + succ.best_min;
      double hi = state_cost + data.transition_cost + succ.best_max;
      if (lo < cell.best_min) {
        cell.best_min = lo;
        cell.arg_min = to;
      }
      if (hi > cell.best_max) {
        cell.best_max = hi;
        cell.arg_max = to;
      }
    }
  }

  const DpCell& entry_cell = cells.at(graph.entry());
  if (std::isinf(entry_cell.best_min)) {
    fail(Errc::no_path, "no path from entry '" + graph.entry() + "' to a terminal");
  }

  EnergyBounds bounds;
  bounds.bcec_path = follow(graph.entry(), cells, /*minimum=*/true);
  bounds.wcec_path = follow(graph.entry(), cells, /*minimum=*/false);
  // Report the witness evaluations themselves so the bounds are exactly
  // what the paths cost, independent of summation order in the sweep.
  bounds.bcec = path_energy(graph, bounds.bcec_path);
  bounds.wcec = path_energy(graph, bounds.wcec_path);
  return bounds;
}

}  // namespace efg
