#include "montecarlo.hpp"

#include <cmath>

#include "errors.hpp"
#include "expected.hpp"
#include "numeric.hpp"

namespace efg {

SampledRun sample_run(const Graph& graph, std::uint64_t seed, std::uint64_t index) {
  std::uint64_t state = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  SampledRun run;
  VertexId cur = graph.entry();
  while (true) {
    run.path.push_back(cur);
    run.energy += graph.vertex_costs().at(cur);
    if (graph.is_terminal(cur)) {
      return run;
    }
    auto adj = graph.adjacency().find(cur);
    if (adj == graph.adjacency().end()) {
      return run;  // non-terminal sink, the walk just stops
    }
    const double u = uniform_unit(state);
    double cumulative = 0.0;
    const VertexId* chosen = nullptr;
    const EdgeData* chosen_data = nullptr;
    for (const auto& [to, data] : adj->second) {
      cumulative += *data.probability;
      if (u < cumulative) {
        chosen = &to;
        chosen_data = &data;
        break;
      }
    }
    if (chosen == nullptr) {
      return run;  // landed in the probability deficit
    }
    run.energy += chosen_data->transition_cost;
    cur = *chosen;
  }
}

MonteCarloReport monte_carlo_energy(const Graph& graph, std::uint64_t samples,
                                    std::uint64_t seed) {
  graph.require_valid();
  require_stochastic(graph);
  require_absorption(graph);
  if (samples == 0) {
    fail(Errc::invalid_argument, "sample count must be positive");
  }

  MonteCarloReport report;
  report.samples = samples;
  report.seed = seed;

  // Welford running moments keep the variance of a constant series at
  // exactly zero.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SampledRun run = sample_run(graph, seed, i);
    const double n = static_cast<double>(i + 1);
    const double delta = run.energy - mean;
    mean += delta / n;
    m2 += delta * (run.energy - mean);
    if (i == 0) {
      report.min_energy = run.energy;
      report.max_energy = run.energy;
    } else {
      report.min_energy = std::min(report.min_energy, run.energy);
      report.max_energy = std::max(report.max_energy, run.energy);
    }
    ++report.path_counts[path_to_string(run.path)];
  }
  report.mean = mean;
  report.std_dev = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1)) : 0.0;
  return report;
}

}  // namespace efg
