#include "paths.hpp"

#include <algorithm>

#include "errors.hpp"

namespace efg {

double path_energy(const Graph& graph, const Path& path) {
  if (path.empty()) {
    fail(Errc::invalid_path, "path is empty");
  }
  for (const auto& v : path) {
    if (!graph.has_vertex(v)) {
      fail(Errc::unknown_vertex, "unknown vertex '" + v + "' in path");
    }
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (graph.edge(path[i], path[i + 1]) == nullptr) {
      fail(Errc::invalid_path, "missing edge " + path[i] + "->" + path[i + 1]);
    }
  }
  double state_sum = 0.0;
  for (const auto& v : path) {
    state_sum += graph.vertex_costs().at(v);
  }
  double transition_sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    transition_sum += graph.edge(path[i], path[i + 1])->transition_cost;
  }
  return state_sum + transition_sum;
}

std::optional<VertexId> find_cycle_vertex(const Graph& graph) {
  // Iterative three-color DFS; an edge into a gray vertex closes a cycle.
  enum class Color { white, gray, black };
  std::map<VertexId, Color> color;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    color[id] = Color::white;
  }
  static const std::map<VertexId, EdgeData> kNoEdges;
  auto successors = [&graph](const VertexId& v) -> const std::map<VertexId, EdgeData>& {
    auto it = graph.adjacency().find(v);
    return it == graph.adjacency().end() ? kNoEdges : it->second;
  };

  struct Frame {
    VertexId vertex;
    std::map<VertexId, EdgeData>::const_iterator next;
    std::map<VertexId, EdgeData>::const_iterator end;
  };
  for (const auto& [root, root_color] : color) {
    if (root_color != Color::white) {
      continue;
    }
    std::vector<Frame> stack;
    color[root] = Color::gray;
    stack.push_back(Frame{root, successors(root).begin(), successors(root).end()});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.end) {
        color[top.vertex] = Color::black;
        stack.pop_back();
        continue;
      }
      const VertexId& child = top.next->first;
      ++top.next;
      auto it = color.find(child);
      if (it == color.end()) {
        continue;  // dangling endpoint; a validation concern, not a cycle
      }
      if (it->second == Color::gray) {
        return child;
      }
      if (it->second == Color::white) {
        it->second = Color::gray;
        stack.push_back(Frame{child, successors(child).begin(), successors(child).end()});
      }
    }
  }
  return std::nullopt;
}

std::vector<VertexId> topological_order(const Graph& graph) {
  std::map<VertexId, std::size_t> in_degree;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    in_degree[id] = 0;
  }
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      auto it = in_degree.find(to);
      if (it != in_degree.end()) {
        ++it->second;
      }
    }
  }
  // Min-id-first Kahn keeps the order deterministic.
  std::set<VertexId> ready;
  for (const auto& [id, deg] : in_degree) {
    if (deg == 0) {
      ready.insert(id);
    }
  }
  std::vector<VertexId> order;
  order.reserve(in_degree.size());
  while (!ready.empty()) {
    VertexId v = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(v);
    auto it = graph.adjacency().find(v);
    if (it == graph.adjacency().end()) {
      continue;
    }
    for (const auto& [to, data] : it->second) {
      auto jt = in_degree.find(to);
      if (jt != in_degree.end() && --jt->second == 0) {
        ready.insert(to);
      }
    }
  }
  if (order.size() != in_degree.size()) {
    auto on_cycle = find_cycle_vertex(graph);
    fail(Errc::cycle, "cycle detected through vertex '" + (on_cycle ? *on_cycle : VertexId()) +
                          "'");
  }
  return order;
}

PathEnumeration enumerate_paths(const Graph& graph, std::size_t max_paths) {
  graph.require_valid();
  if (auto v = find_cycle_vertex(graph)) {
    fail(Errc::cycle, "cycle detected through vertex '" + *v + "'");
  }

  PathEnumeration result;
  // Iterative DFS taking successors in ascending id order, which emits the
  // entry-to-terminal paths in lexicographic order.
  struct Frame {
    VertexId vertex;
    std::map<VertexId, EdgeData>::const_iterator next;
    std::map<VertexId, EdgeData>::const_iterator end;
  };
  static const std::map<VertexId, EdgeData> kNoEdges;
  auto successors = [&graph](const VertexId& v) -> const std::map<VertexId, EdgeData>& {
    auto it = graph.adjacency().find(v);
    return it == graph.adjacency().end() ? kNoEdges : it->second;
  };

  std::vector<Frame> stack;
  Path current;
  const auto& entry_succ = successors(graph.entry());
  stack.push_back(Frame{graph.entry(), entry_succ.begin(), entry_succ.end()});
  current.push_back(graph.entry());

  while (!stack.empty()) {
    if (current.size() == stack.size() && graph.is_terminal(stack.back().vertex)) {
      if (result.paths.size() == max_paths) {
        result.truncated = true;
        break;
      }
      result.paths.push_back(current);
    }
    Frame& top = stack.back();
    if (top.next == top.end) {
      stack.pop_back();
      current.pop_back();
      continue;
    }
    VertexId child = top.next->first;
    ++top.next;
    const auto& succ = successors(child);
    stack.push_back(Frame{child, succ.begin(), succ.end()});
    current.push_back(child);
  }
  return result;
}

std::string path_to_string(const Path& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) {
      out += '>';
    }
    out += path[i];
  }
  return out;
}

}  // namespace efg
