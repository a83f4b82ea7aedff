#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace efg {

// A valid execution path is an ordered vertex sequence in which every
// consecutive pair is an edge of the graph it is evaluated against.
using Path = std::vector<VertexId>;

// Total energy of a path: the sum of state costs over its vertices plus the
// sum of transition costs over its edges, accumulated in path order.
// Throws invalid-path naming the first missing edge.
double path_energy(const Graph& graph, const Path& path);

struct PathEnumeration {
  std::vector<Path> paths;  // lexicographic by vertex sequence
  bool truncated = false;   // true when more paths exist beyond max_paths
};

// All entry-to-terminal paths of an acyclic graph, deterministically ordered.
// Throws cycle-detected (naming one vertex on a cycle) for cyclic graphs.
PathEnumeration enumerate_paths(const Graph& graph, std::size_t max_paths);

// Some vertex lying on a cycle, or nullopt when the graph is acyclic.
std::optional<VertexId> find_cycle_vertex(const Graph& graph);

// Vertices in topological order; throws cycle-detected when none exists.
std::vector<VertexId> topological_order(const Graph& graph);

std::string path_to_string(const Path& path);

}  // namespace efg
