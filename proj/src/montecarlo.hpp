#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "graph.hpp"
#include "paths.hpp"

namespace efg {

struct SampledRun {
  Path path;
  double energy = 0.0;
};

// Sample statistics over randomized entry-to-absorption walks. std_dev
// uses the sample (N-1) estimator and is exactly 0 for constant runs.
struct MonteCarloReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double min_energy = 0.0;
  double max_energy = 0.0;
  std::map<std::string, std::uint64_t> path_counts;
};

// One walk from entry, fully determined by (seed, index); a probability
// deficit at a vertex terminates the walk there with no further cost.
SampledRun sample_run(const Graph& graph, std::uint64_t seed, std::uint64_t index);

// Deterministic for fixed (graph, samples, seed); sample i draws from its
// own counter-derived stream, so evaluation order cannot change results.
MonteCarloReport monte_carlo_energy(const Graph& graph, std::uint64_t samples,
                                    std::uint64_t seed);

}  // namespace efg
