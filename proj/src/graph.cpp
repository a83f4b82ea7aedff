#include "graph.hpp"

#include "errors.hpp"
#include "numeric.hpp"

namespace efg {

namespace {
constexpr double kProbabilityMassTolerance = 1e-9;
}

GraphBuilder& GraphBuilder::add_vertex(const VertexId& id, double state_cost) {
  auto [it, inserted] = vertex_costs_.emplace(id, state_cost);
  (void)it;
  if (!inserted) {
    fail(Errc::invalid_argument, "duplicate vertex '" + id + "'");
  }
  return *this;
}

GraphBuilder& GraphBuilder::add_edge_impl(const VertexId& from, const VertexId& to, EdgeData data) {
  auto [it, inserted] = out_[from].emplace(to, data);
  (void)it;
  if (!inserted) {
    fail(Errc::invalid_argument, "duplicate edge " + from + "->" + to);
  }
  return *this;
}

GraphBuilder& GraphBuilder::add_edge(const VertexId& from, const VertexId& to,
                                     double transition_cost) {
  return add_edge_impl(from, to, EdgeData{transition_cost, std::nullopt});
}

GraphBuilder& GraphBuilder::add_edge(const VertexId& from, const VertexId& to,
                                     double transition_cost, double probability) {
  return add_edge_impl(from, to, EdgeData{transition_cost, probability});
}

GraphBuilder& GraphBuilder::add_edge(const VertexId& from, const VertexId& to, EdgeData data) {
  return add_edge_impl(from, to, std::move(data));
}

GraphBuilder& GraphBuilder::set_entry(const VertexId& id) {
  entry_ = id;
  return *this;
}

GraphBuilder& GraphBuilder::add_terminal(const VertexId& id) {
  terminals_.insert(id);
  return *this;
}

Graph GraphBuilder::build() const {
  Graph g;
  g.vertex_costs_ = vertex_costs_;
  g.out_ = out_;
  g.entry_ = entry_;
  g.terminals_ = terminals_;
  g.violations_ = validate_graph(g);
  return g;
}

double Graph::state_cost(const VertexId& id) const {
  auto it = vertex_costs_.find(id);
  if (it == vertex_costs_.end()) {
    fail(Errc::unknown_vertex, "unknown vertex '" + id + "'");
  }
  return it->second;
}

const EdgeData* Graph::edge(const VertexId& from, const VertexId& to) const {
  auto it = out_.find(from);
  if (it == out_.end()) {
    return nullptr;
  }
  auto jt = it->second.find(to);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::size_t Graph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [from, succ] : out_) {
    n += succ.size();
  }
  return n;
}

bool Graph::is_stochastic() const {
  for (const auto& [from, succ] : out_) {
    for (const auto& [to, data] : succ) {
      if (!data.probability.has_value()) {
        return false;
      }
    }
  }
  return true;
}

void Graph::require_valid() const {
  if (!violations_.empty()) {
    fail(Errc::invalid_graph, "invalid graph: " + violations_.front().message);
  }
}

Graph Graph::with_vertex_cost(const VertexId& id, double state_cost) const {
  if (!has_vertex(id)) {
    fail(Errc::unknown_vertex, "unknown vertex '" + id + "'");
  }
  Graph g = *this;
  g.vertex_costs_[id] = state_cost;
  g.violations_ = validate_graph(g);
  return g;
}

bool Graph::operator==(const Graph& other) const {
  return vertex_costs_ == other.vertex_costs_ && out_ == other.out_ && entry_ == other.entry_ &&
         terminals_ == other.terminals_;
}

std::vector<Violation> validate_graph(const Graph& graph) {
  std::vector<Violation> out;
  auto report = [&out](std::string message) { out.push_back(Violation{std::move(message)}); };

  for (const auto& [id, cost] : graph.vertex_costs()) {
    if (id.empty()) {
      report("empty vertex id");
    }
    if (cost < 0.0) {
      report("negative state cost " + format_double(cost) + " at " + id);
    }
  }

  for (const auto& [from, succ] : graph.adjacency()) {
    if (!graph.has_vertex(from)) {
      report("edge source '" + from + "' is not a vertex");
    }
    for (const auto& [to, data] : succ) {
      if (!graph.has_vertex(to)) {
        report("edge " + from + "->" + to + " references unknown vertex '" + to + "'");
      }
      if (data.transition_cost < 0.0) {
        report("negative transition cost " + format_double(data.transition_cost) + " on edge " +
               from + "->" + to);
      }
      if (data.probability.has_value() && (*data.probability < 0.0 || *data.probability > 1.0)) {
        report("probability " + format_double(*data.probability) + " outside [0, 1] on edge " +
               from + "->" + to);
      }
    }
  }

  if (graph.terminals().empty()) {
    report("terminal set is empty");
  }
  for (const auto& t : graph.terminals()) {
    if (!graph.has_vertex(t)) {
      report("terminal '" + t + "' is not a vertex");
    }
    auto it = graph.adjacency().find(t);
    if (it != graph.adjacency().end() && !it->second.empty()) {
      report("terminal " + t + " has outgoing edge");
    }
  }

  if (graph.entry().empty()) {
    report("entry vertex not set");
  } else if (!graph.has_vertex(graph.entry())) {
    report("entry vertex '" + graph.entry() + "' is not in the vertex set");
  }

  for (const auto& [from, succ] : graph.adjacency()) {
    double mass = 0.0;
    bool any = false;
    for (const auto& [to, data] : succ) {
      if (data.probability.has_value()) {
        mass += *data.probability;
        any = true;
      }
    }
    if (any && mass > 1.0 + kProbabilityMassTolerance) {
      report("outgoing probability mass " + format_double(mass) + " > 1 at " + from);
    }
  }

  return out;
}

}  // namespace efg
