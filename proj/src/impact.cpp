#include "impact.hpp"

#include <algorithm>

#include "errors.hpp"
#include "expected.hpp"
#include "numeric.hpp"
#include "paths.hpp"

namespace efg {

namespace {

constexpr std::uint64_t kEnumerationCap = 1'000'000;

}  // namespace

double node_impact(const Graph& graph, const NodeOptimization& change, ImpactMethod method) {
  graph.require_valid();
  require_stochastic(graph);
  if (graph.vertex_costs().find(change.vertex) == graph.vertex_costs().end()) {
    fail(Errc::unknown_vertex, "unknown vertex '" + change.vertex + "'");
  }
  if (change.new_cost < 0.0) {
    fail(Errc::invalid_argument,
         "new cost " + format_double(change.new_cost) + " is negative");
  }
  const double current = graph.vertex_costs().at(change.vertex);
  if (change.old_cost != current) {
    fail(Errc::invalid_argument, "old cost " + format_double(change.old_cost) +
                                     " does not match current state cost " +
                                     format_double(current) + " at " + change.vertex);
  }
  const double saving = change.old_cost - change.new_cost;

  if (method == ImpactMethod::path_enumeration) {
    PathEnumeration enumeration = enumerate_paths(graph, kEnumerationCap);
    if (enumeration.truncated) {
      fail(Errc::out_of_range, "path set exceeds " + std::to_string(kEnumerationCap) +
                                   " paths; use the visit-counts method");
    }
    double delta = 0.0;
    for (const Path& path : enumeration.paths) {
      const auto occurrences =
          std::count(path.begin(), path.end(), change.vertex);
      if (occurrences == 0) {
        continue;
      }
      double probability = 1.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        probability *= *graph.edge(path[i], path[i + 1])->probability;
      }
      delta += probability * static_cast<double>(occurrences) * saving;
    }
    return delta;
  }

  VisitCountReport visits = expected_visits(graph);
  return saving * visits.per_vertex.at(change.vertex);
}

}  // namespace efg
