#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graph.hpp"

namespace efg {

enum class ExpectMethod { linear_solve, value_iteration };

// Per-vertex expected energy to absorption. Values satisfy the fixed-point
// equation E(v) = Cs(v) + sum over outgoing edges of P(v,u) * (Ct(v,u) + E(u)),
// with E(t) = Cs(t) at terminals. Sub-stochastic probability mass at a vertex
// is treated as immediate termination there, exactly as the equation reads.
struct ExpectedEnergyReport {
  std::map<VertexId, double> per_vertex;
  ExpectMethod method = ExpectMethod::linear_solve;
  double residual = 0.0;  // max absolute fixed-point violation
  std::vector<std::string> warnings;
};

constexpr double kDefaultTolerance = 1e-9;
constexpr std::uint64_t kDefaultMaxIterations = 1'000'000;

ExpectedEnergyReport expected_energy(const Graph& graph,
                                     ExpectMethod method = ExpectMethod::linear_solve,
                                     double tolerance = kDefaultTolerance,
                                     std::uint64_t max_iterations = kDefaultMaxIterations);

// Expected number of visits per vertex on a run from entry to absorption,
// from the standard absorbing-chain linear system.
struct VisitCountReport {
  std::map<VertexId, double> per_vertex;
  std::vector<std::string> warnings;
};

VisitCountReport expected_visits(const Graph& graph);

// Shared preconditions: a valid graph, a probability on every edge, and a
// terminal reachable through positive-probability edges from every
// non-terminal vertex. Violations throw not-stochastic / no-absorption.
void require_stochastic(const Graph& graph);
void require_absorption(const Graph& graph);

}  // namespace efg
