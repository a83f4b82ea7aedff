#include "expected.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "errors.hpp"
#include "linsolve.hpp"
#include "numeric.hpp"

namespace efg {

namespace {

constexpr double kConditionWarningThreshold = 1e12;

std::vector<VertexId> sorted_non_terminals(const Graph& graph) {
  std::vector<VertexId> out;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    if (!graph.is_terminal(id)) {
      out.push_back(id);
    }
  }
  return out;
}

std::map<VertexId, double> bellman_apply(const Graph& graph,
                                         const std::map<VertexId, double>& values) {
  std::map<VertexId, double> next;
  for (const auto& [v, state_cost] : graph.vertex_costs()) {
    if (graph.is_terminal(v)) {
      next[v] = state_cost;
      continue;
    }
    double acc = state_cost;
    auto it = graph.adjacency().find(v);
    if (it != graph.adjacency().end()) {
      for (const auto& [u, data] : it->second) {
        acc += *data.probability * (data.transition_cost + values.at(u));
      }
    }
    next[v] = acc;
  }
  return next;
}

double bellman_residual(const Graph& graph, const std::map<VertexId, double>& values) {
  std::map<VertexId, double> applied = bellman_apply(graph, values);
  double res = 0.0;
  for (const auto& [v, value] : values) {
    res = std::max(res, std::abs(applied.at(v) - value));
  }
  return res;
}

// Rows/columns indexed by sorted non-terminal vertices; entries of
// I - Q where Q holds the transition probabilities among them.
std::vector<double> transient_matrix(const Graph& graph, const std::vector<VertexId>& transient,
                                     bool transpose) {
  const std::size_t n = transient.size();
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    index.emplace(transient[i], i);
  }
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto it = graph.adjacency().find(transient[i]);
    if (it == graph.adjacency().end()) {
      continue;
    }
    for (const auto& [to, data] : it->second) {
      auto jt = index.find(to);
      if (jt == index.end()) {
        continue;  // edge into a terminal
      }
      std::size_t j = jt->second;
      if (transpose) {
        a[j * n + i] -= *data.probability;
      } else {
        a[i * n + j] -= *data.probability;
      }
    }
  }
  return a;
}

void append_condition_warning(double condition, std::vector<std::string>& warnings) {
  if (condition >= kConditionWarningThreshold) {
    warnings.push_back("near-singular linear system: condition estimate " +
                       format_double(condition));
  }
}

}  // namespace

void require_stochastic(const Graph& graph) {
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      if (!data.probability.has_value()) {
        fail(Errc::not_stochastic,
             "edge " + from + "->" + to + " has no probability; graph is not stochastic");
      }
    }
  }
}

void require_absorption(const Graph& graph) {
  // Reverse reachability from the terminal set over positive-probability
  // edges; anything not reached can never be absorbed.
  std::map<VertexId, std::vector<VertexId>> reverse;
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      if (data.probability.has_value() && *data.probability > 0.0) {
        reverse[to].push_back(from);
      }
    }
  }
  std::set<VertexId> reached(graph.terminals().begin(), graph.terminals().end());
  std::deque<VertexId> frontier(graph.terminals().begin(), graph.terminals().end());
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop_front();
    auto it = reverse.find(v);
    if (it == reverse.end()) {
      continue;
    }
    for (const auto& u : it->second) {
      if (reached.insert(u).second) {
        frontier.push_back(u);
      }
    }
  }
  for (const auto& [id, cost] : graph.vertex_costs()) {
    if (reached.count(id) == 0) {
      fail(Errc::no_absorption, "vertex '" + id +
                                    "' cannot reach a terminal with positive probability; "
                                    "expected energy diverges");
    }
  }
}

ExpectedEnergyReport expected_energy(const Graph& graph, ExpectMethod method, double tolerance,
                                     std::uint64_t max_iterations) {
  graph.require_valid();
  require_stochastic(graph);
  require_absorption(graph);
  if (tolerance <= 0.0) {
    fail(Errc::invalid_argument, "tolerance must be positive");
  }

  ExpectedEnergyReport report;
  report.method = method;

  const std::vector<VertexId> transient = sorted_non_terminals(graph);
  const std::size_t n = transient.size();

  if (method == ExpectMethod::linear_solve) {
    // Row i: E(v_i) - sum_j Q[i][j] E(v_j) = Cs(v_i) + sum_u P(v_i,u) Ct(v_i,u)
    //                                        + sum_t P(v_i,t) Cs(t)
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = graph.vertex_costs().at(transient[i]);
      auto it = graph.adjacency().find(transient[i]);
      if (it != graph.adjacency().end()) {
        for (const auto& [to, data] : it->second) {
          acc += *data.probability * data.transition_cost;
          if (graph.is_terminal(to)) {
            acc += *data.probability * graph.vertex_costs().at(to);
          }
        }
      }
      rhs[i] = acc;
    }
    if (n > 0) {
      LuFactors lu(transient_matrix(graph, transient, /*transpose=*/false), n);
      append_condition_warning(lu.condition_estimate(), report.warnings);
      std::vector<double> x = lu.solve(std::move(rhs));
      for (std::size_t i = 0; i < n; ++i) {
        report.per_vertex[transient[i]] = x[i];
      }
    }
    for (const auto& t : graph.terminals()) {
      report.per_vertex[t] = graph.vertex_costs().at(t);
    }
    // Non-negative costs bound every value below by the state cost; trim
    // solver dust that lands under it.
    for (auto& [v, value] : report.per_vertex) {
      value = std::max(value, graph.vertex_costs().at(v));
    }
    report.residual = bellman_residual(graph, report.per_vertex);
    if (report.residual > tolerance) {
      fail(Errc::convergence, "linear solve residual " + format_double(report.residual) +
                                  " exceeds tolerance " + format_double(tolerance));
    }
    return report;
  }

  // Value iteration from the state costs converges monotonically from below.
  std::map<VertexId, double> values;
  for (const auto& [v, cost] : graph.vertex_costs()) {
    values[v] = cost;
  }
  std::uint64_t iterations = 0;
  while (true) {
    if (iterations >= max_iterations) {
      fail(Errc::convergence, "value iteration did not converge within " +
                                  std::to_string(max_iterations) + " iterations");
    }
    std::map<VertexId, double> next = bellman_apply(graph, values);
    double delta = 0.0;
    for (const auto& [v, value] : next) {
      delta = std::max(delta, std::abs(value - values.at(v)));
    }
    values = std::move(next);
    ++iterations;
    if (delta <= tolerance) {
      double residual = bellman_residual(graph, values);
      if (residual <= tolerance) {
        report.residual = residual;
        break;
      }
    }
  }
  report.per_vertex = std::move(values);
  return report;
}

VisitCountReport expected_visits(const Graph& graph) {
  graph.require_valid();
  require_stochastic(graph);
  require_absorption(graph);

  VisitCountReport report;
  const std::vector<VertexId> transient = sorted_non_terminals(graph);
  const std::size_t n = transient.size();
  std::map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    index.emplace(transient[i], i);
  }

  // (I - Q)^T nu = e_entry over the transient states.
  std::vector<double> nu;
  if (n > 0) {
    std::vector<double> rhs(n, 0.0);
    auto entry_it = index.find(graph.entry());
    if (entry_it != index.end()) {
      rhs[entry_it->second] = 1.0;
    }
    LuFactors lu(transient_matrix(graph, transient, /*transpose=*/true), n);
    append_condition_warning(lu.condition_estimate(), report.warnings);
    nu = lu.solve(std::move(rhs));
  }
  for (std::size_t i = 0; i < n; ++i) {
    report.per_vertex[transient[i]] = std::max(nu[i], 0.0);
  }
  // A terminal is visited exactly once per absorption into it.
  for (const auto& t : graph.terminals()) {
    double inflow = (graph.entry() == t) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const EdgeData* e = graph.edge(transient[i], t);
      if (e != nullptr) {
        inflow += *e->probability * report.per_vertex.at(transient[i]);
      }
    }
    report.per_vertex[t] = inflow;
  }
  return report;
}

}  // namespace efg
