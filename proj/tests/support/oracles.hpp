#pragma once

// Independent re-implementations of the library's arithmetic, written
// against the definitions rather than the library code, for use as test
// oracles. Everything here favors clarity over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace testsupport {

struct OraclePath {
  std::vector<efg::VertexId> vertices;
  double probability = 1.0;
};

// Sum of state costs in path order plus sum of transition costs in path
// order, kept as the two sums of the definition.
inline double oracle_path_energy(const efg::Graph& graph,
                                 const std::vector<efg::VertexId>& path) {
  double states = 0.0;
  for (const efg::VertexId& v : path) {
    states += graph.vertex_costs().at(v);
  }
  double transitions = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    transitions += graph.adjacency().at(path[i]).at(path[i + 1]).transition_cost;
  }
  return states + transitions;
}

namespace detail {
inline void collect_paths(const efg::Graph& graph, std::vector<efg::VertexId>& prefix,
                          double probability, std::vector<OraclePath>& out) {
  const efg::VertexId& here = prefix.back();
  if (graph.is_terminal(here)) {
    out.push_back({prefix, probability});
    return;
  }
  auto it = graph.adjacency().find(here);
  if (it == graph.adjacency().end()) {
    return;
  }
  for (const auto& [next, data] : it->second) {
    const double p = data.probability.value_or(1.0);
    prefix.push_back(next);
    collect_paths(graph, prefix, probability * p, out);
    prefix.pop_back();
  }
}
}  // namespace detail

// Recursive enumeration of every entry-to-terminal path with its
// probability product. Only sound on acyclic graphs.
inline std::vector<OraclePath> oracle_enumerate(const efg::Graph& graph) {
  std::vector<OraclePath> out;
  std::vector<efg::VertexId> prefix{graph.entry()};
  detail::collect_paths(graph, prefix, 1.0, out);
  return out;
}

// Probability-weighted energy over the full path set.
inline double oracle_expected_energy(const efg::Graph& graph) {
  double total = 0.0;
  for (const OraclePath& path : oracle_enumerate(graph)) {
    total += path.probability * oracle_path_energy(graph, path.vertices);
  }
  return total;
}

// Expected visit counts as probability-weighted path occurrences.
inline std::map<efg::VertexId, double> oracle_visits(const efg::Graph& graph) {
  std::map<efg::VertexId, double> counts;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    (void)cost;
    counts[id] = 0.0;
  }
  for (const OraclePath& path : oracle_enumerate(graph)) {
    for (const efg::VertexId& v : path.vertices) {
      counts[v] += path.probability;
    }
  }
  return counts;
}

namespace detail {
inline bool walk_assignment(const efg::Graph& graph,
                            const std::map<efg::VertexId, efg::VertexId>& choice,
                            std::vector<efg::VertexId>& out) {
  out.assign(1, graph.entry());
  while (!graph.is_terminal(out.back())) {
    auto it = choice.find(out.back());
    if (it == choice.end() || out.size() > graph.vertex_count()) {
      return false;
    }
    out.push_back(it->second);
  }
  return true;
}
}  // namespace detail

// Minimum entry-to-terminal energy over every deterministic successor
// assignment, found by exhaustive product-space search. Returns infinity
// when no assignment reaches a terminal.
inline double oracle_policy_minimum(const efg::Graph& graph) {
  std::vector<efg::VertexId> deciders;
  std::vector<std::vector<efg::VertexId>> options;
  for (const auto& [from, succ] : graph.adjacency()) {
    (void)succ;
    if (graph.is_terminal(from)) {
      continue;
    }
    deciders.push_back(from);
    std::vector<efg::VertexId> outs;
    for (const auto& [to, data] : graph.adjacency().at(from)) {
      (void)data;
      outs.push_back(to);
    }
    options.push_back(std::move(outs));
  }

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(deciders.size(), 0);
  while (true) {
    std::map<efg::VertexId, efg::VertexId> choice;
    for (std::size_t i = 0; i < deciders.size(); ++i) {
      choice[deciders[i]] = options[i][pick[i]];
    }
    std::vector<efg::VertexId> walked;
    if (detail::walk_assignment(graph, choice, walked)) {
      const double energy = oracle_path_energy(graph, walked);
      if (energy < best) {
        best = energy;
      }
    }
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < options[i].size()) {
        break;
      }
      pick[i] = 0;
    }
    if (i == pick.size()) {
      break;
    }
  }
  return best;
}

// Two-pass textbook mean / sample standard deviation.
inline double oracle_mean(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) {
    sum += x;
  }
  return sum / static_cast<double>(xs.size());
}

inline double oracle_sample_std(const std::vector<double>& xs) {
  const double mean = oracle_mean(xs);
  double squares = 0.0;
  for (double x : xs) {
    squares += (x - mean) * (x - mean);
  }
  return std::sqrt(squares / static_cast<double>(xs.size() - 1));
}

// Textbook Pearson correlation over paired samples.
inline double oracle_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = oracle_mean(a);
  const double mb = oracle_mean(b);
  double cov = 0.0;
  double va = 0.0;
  double vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

// Macro-state cost by direct summation: member state costs plus
// member-to-member transition costs.
inline double oracle_macro_cost(const efg::Graph& graph,
                                const std::set<efg::VertexId>& members) {
  double total = 0.0;
  for (const efg::VertexId& m : members) {
    total += graph.vertex_costs().at(m);
  }
  for (const auto& [from, outs] : graph.adjacency()) {
    if (members.count(from) == 0) {
      continue;
    }
    for (const auto& [to, data] : outs) {
      if (members.count(to) != 0) {
        total += data.transition_cost;
      }
    }
  }
  return total;
}

// Whole-graph energy by direct summation of every cost in the tuple.
inline double oracle_total_energy(const efg::Graph& graph) {
  double total = 0.0;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    (void)id;
    total += cost;
  }
  for (const auto& [from, outs] : graph.adjacency()) {
    (void)from;
    for (const auto& [to, data] : outs) {
      (void)to;
      total += data.transition_cost;
    }
  }
  return total;
}

// Combined multiplicative saving, written as the complement product.
inline double oracle_cascade(const std::vector<double>& savings) {
  double remaining = 1.0;
  double largest = 0.0;
  for (double s : savings) {
    remaining *= 1.0 - s;
    largest = std::max(largest, s);
  }
  return std::max(1.0 - remaining, largest);
}

}  // namespace testsupport
