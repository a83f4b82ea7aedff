#include "collapse.hpp"

#include "errors.hpp"
#include "numeric.hpp"

namespace efg {

namespace {

void check_members(const Graph& graph, const std::set<VertexId>& members) {
  if (members.empty()) {
    fail(Errc::invalid_selection, "member set is empty");
  }
  for (const auto& m : members) {
    if (graph.vertex_costs().find(m) == graph.vertex_costs().end()) {
      fail(Errc::invalid_selection, "member '" + m + "' is not a vertex");
    }
  }
}

}  // namespace

double total_graph_energy(const Graph& graph) {
  CompensatedSum total;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    total.add(cost);
  }
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      total.add(data.transition_cost);
    }
  }
  return total.value();
}

double subgraph_cost(const Graph& graph, const std::set<VertexId>& members) {
  check_members(graph, members);
  CompensatedSum total;
  for (const auto& m : members) {
    total.add(graph.vertex_costs().at(m));
  }
  for (const auto& from : members) {
    auto adj = graph.adjacency().find(from);
    if (adj == graph.adjacency().end()) {
      continue;
    }
    for (const auto& [to, data] : adj->second) {
      if (members.count(to) != 0) {
        total.add(data.transition_cost);
      }
    }
  }
  return total.value();
}

CollapseResult collapse(const Graph& graph, const SubgraphSelection& selection) {
  graph.require_valid();
  const std::set<VertexId>& members = selection.members;
  check_members(graph, members);
  const bool whole_graph = members.size() == graph.vertex_costs().size();
  if (selection.macro_id.empty()) {
    fail(Errc::invalid_selection, "macro id is empty");
  }
  if (graph.vertex_costs().find(selection.macro_id) != graph.vertex_costs().end()) {
    fail(Errc::invalid_selection,
         "macro id '" + selection.macro_id + "' already names a vertex");
  }
  if (!whole_graph && members.count(graph.entry()) != 0) {
    fail(Errc::invalid_selection,
         "entry vertex '" + graph.entry() + "' is in the member set");
  }

  CollapseProvenance prov;
  prov.macro_id = selection.macro_id;
  prov.original_entry = graph.entry();
  for (const auto& m : members) {
    prov.member_costs[m] = graph.vertex_costs().at(m);
    if (graph.is_terminal(m)) {
      prov.member_terminals.insert(m);
    }
  }

  // Classify edges; a second boundary edge on the same external vertex
  // and direction would have to merge after rewiring, which is rejected.
  for (const auto& [from, succ] : graph.adjacency()) {
    const bool from_inside = members.count(from) != 0;
    for (const auto& [to, data] : succ) {
      const bool to_inside = members.count(to) != 0;
      if (from_inside && to_inside) {
        prov.internal_edges[from][to] = data;
      } else if (from_inside) {
        auto [it, inserted] = prov.outgoing.emplace(to, std::make_pair(from, data));
        if (!inserted) {
          fail(Errc::duplicate_boundary, "edges " + it->second.first + "->" + to + " and " +
                                             from + "->" + to + " both map to " +
                                             selection.macro_id + "->" + to);
        }
      } else if (to_inside) {
        auto [it, inserted] = prov.incoming.emplace(from, std::make_pair(to, data));
        if (!inserted) {
          fail(Errc::duplicate_boundary, "edges " + from + "->" + it->second.first + " and " +
                                             from + "->" + to + " both map to " + from + "->" +
                                             selection.macro_id);
        }
      }
    }
  }

  bool macro_terminal = false;
  if (!prov.member_terminals.empty()) {
    if (!prov.outgoing.empty()) {
      fail(Errc::terminal_membership,
           "terminal '" + *prov.member_terminals.begin() +
               "' is a member but the macro vertex would have outgoing edges");
    }
    macro_terminal = true;
  }

  double mass = 0.0;
  for (const auto& [external, rec] : prov.outgoing) {
    if (rec.second.probability.has_value()) {
      mass += *rec.second.probability;
    }
  }
  if (mass > 1.0 + 1e-9) {
    fail(Errc::invalid_selection, "outgoing probability mass " + format_double(mass) +
                                      " > 1 at macro '" + selection.macro_id + "'");
  }

  CompensatedSum macro_cost;
  for (const auto& [m, cost] : prov.member_costs) {
    macro_cost.add(cost);
  }
  for (const auto& [from, succ] : prov.internal_edges) {
    for (const auto& [to, data] : succ) {
      macro_cost.add(data.transition_cost);
    }
  }

  GraphBuilder builder;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    if (members.count(id) == 0) {
      builder.add_vertex(id, cost);
    }
  }
  builder.add_vertex(selection.macro_id, macro_cost.value());
  for (const auto& [from, succ] : graph.adjacency()) {
    if (members.count(from) != 0) {
      continue;
    }
    for (const auto& [to, data] : succ) {
      if (members.count(to) == 0) {
        builder.add_edge(from, to, data);
      }
    }
  }
  for (const auto& [external, rec] : prov.incoming) {
    builder.add_edge(external, selection.macro_id, rec.second);
  }
  for (const auto& [external, rec] : prov.outgoing) {
    builder.add_edge(selection.macro_id, external, rec.second);
  }
  builder.set_entry(whole_graph ? selection.macro_id : graph.entry());
  for (const auto& t : graph.terminals()) {
    if (members.count(t) == 0) {
      builder.add_terminal(t);
    }
  }
  if (macro_terminal) {
    builder.add_terminal(selection.macro_id);
  }

  CollapseResult result{builder.build(), std::move(prov)};
  return result;
}

Graph expand(const Graph& graph, const CollapseProvenance& provenance) {
  const VertexId& macro = provenance.macro_id;
  if (graph.vertex_costs().find(macro) == graph.vertex_costs().end()) {
    fail(Errc::invalid_argument, "macro vertex '" + macro + "' is not in the graph");
  }

  GraphBuilder builder;
  for (const auto& [id, cost] : graph.vertex_costs()) {
    if (id != macro) {
      builder.add_vertex(id, cost);
    }
  }
  for (const auto& [m, cost] : provenance.member_costs) {
    builder.add_vertex(m, cost);
  }
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      if (from == macro) {
        auto it = provenance.outgoing.find(to);
        if (it == provenance.outgoing.end()) {
          fail(Errc::invalid_argument,
               "edge " + macro + "->" + to + " has no provenance record");
        }
        builder.add_edge(it->second.first, to, it->second.second);
      } else if (to == macro) {
        auto it = provenance.incoming.find(from);
        if (it == provenance.incoming.end()) {
          fail(Errc::invalid_argument,
               "edge " + from + "->" + macro + " has no provenance record");
        }
        builder.add_edge(from, it->second.first, it->second.second);
      } else {
        builder.add_edge(from, to, data);
      }
    }
  }
  for (const auto& [from, succ] : provenance.internal_edges) {
    for (const auto& [to, data] : succ) {
      builder.add_edge(from, to, data);
    }
  }
  builder.set_entry(graph.entry() == macro ? provenance.original_entry : graph.entry());
  for (const auto& t : graph.terminals()) {
    if (t != macro) {
      builder.add_terminal(t);
    }
  }
  for (const auto& t : provenance.member_terminals) {
    builder.add_terminal(t);
  }
  return builder.build();
}

}  // namespace efg
