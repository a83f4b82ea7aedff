#pragma once

// Seeded random corpora. Every generator is a pure function of its seed
// so failures replay exactly.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "numeric.hpp"

namespace testsupport {

struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() { return efg::splitmix64(state); }

  double unit() { return efg::uniform_unit(state); }

  // Uniform integer in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + next() % (hi - lo + 1);
  }
};

inline std::string vertex_name(std::size_t index) {
  return "V" + std::to_string(index);
}

// Random acyclic stochastic graph: vertices are topologically indexed,
// every non-terminal fans out to one..three higher-indexed vertices with
// probabilities summing to one, and the highest vertex is the terminal.
// Every vertex reaches the terminal, so absorption always holds.
inline efg::Graph random_dag(std::uint64_t seed, std::size_t min_vertices = 5,
                             std::size_t max_vertices = 12) {
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(rng.range(min_vertices, max_vertices));

  efg::GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) {
    b.add_vertex(vertex_name(i), rng.unit() * 10.0);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t max_fan = std::min<std::size_t>(3, n - 1 - i);
    const std::size_t fan = static_cast<std::size_t>(rng.range(1, max_fan));
    std::set<std::size_t> targets;
    while (targets.size() < fan) {
      targets.insert(static_cast<std::size_t>(rng.range(i + 1, n - 1)));
    }
    std::vector<double> weights;
    double weight_sum = 0.0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      weights.push_back(0.05 + rng.unit());
      weight_sum += weights.back();
    }
    std::size_t k = 0;
    double assigned = 0.0;
    for (std::size_t target : targets) {
      double p = weights[k] / weight_sum;
      if (k + 1 == targets.size()) {
        p = 1.0 - assigned;
      }
      assigned += p;
      b.add_edge(vertex_name(i), vertex_name(target), rng.unit() * 5.0, p);
      ++k;
    }
  }
  b.set_entry(vertex_name(0));
  b.add_terminal(vertex_name(n - 1));
  return b.build();
}

// Random strictly positive series for statistics checks.
inline std::vector<double> random_series(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs.push_back(0.5 + rng.unit() * 99.5);
  }
  return xs;
}

// Random savings vector with entries in [0, 0.95].
inline std::vector<double> random_savings(std::uint64_t seed, std::size_t max_len = 6) {
  Rng rng(seed);
  const std::size_t len = static_cast<std::size_t>(rng.range(1, max_len));
  std::vector<double> savings;
  savings.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    savings.push_back(rng.unit() * 0.95);
  }
  return savings;
}

// Uniformly chosen non-empty member set that leaves the entry outside
// and respects the single-port rule often enough to be useful: callers
// filter failures.
inline std::set<efg::VertexId> random_members(std::uint64_t seed, const efg::Graph& graph) {
  Rng rng(seed);
  std::vector<efg::VertexId> candidates;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    (void)cost;
    if (id != graph.entry()) {
      candidates.push_back(id);
    }
  }
  std::set<efg::VertexId> members;
  for (const efg::VertexId& id : candidates) {
    if (rng.unit() < 0.4) {
      members.insert(id);
    }
  }
  if (members.empty() && !candidates.empty()) {
    members.insert(candidates[static_cast<std::size_t>(rng.range(0, candidates.size() - 1))]);
  }
  return members;
}

}  // namespace testsupport
