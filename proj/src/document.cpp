#include "document.hpp"

#include <set>

#include "json.hpp"

#include "errors.hpp"
#include "numeric.hpp"

namespace efg {

namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse, std::string("invalid document: ") + e.what());
  }
}

void check_fields(const json& object, const std::string& context,
                  const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    if (allowed.count(key) == 0) {
      fail(Errc::parse, context + ": unknown field '" + key + "'");
    }
  }
}

const json& require_field(const json& object, const std::string& context,
                          const std::string& name) {
  auto it = object.find(name);
  if (it == object.end()) {
    fail(Errc::parse, context + ": missing field '" + name + "'");
  }
  return *it;
}

const json& require_object(const json& value, const std::string& context) {
  if (!value.is_object()) {
    fail(Errc::parse, context + ": expected an object");
  }
  return value;
}

const json& require_array(const json& object, const std::string& context,
                          const std::string& name) {
  const json& value = require_field(object, context, name);
  if (!value.is_array()) {
    fail(Errc::parse, context + ": field '" + name + "' must be an array");
  }
  return value;
}

std::string require_string(const json& object, const std::string& context,
                           const std::string& name) {
  const json& value = require_field(object, context, name);
  if (!value.is_string()) {
    fail(Errc::parse, context + ": field '" + name + "' must be a string");
  }
  return value.get<std::string>();
}

double require_number(const json& object, const std::string& context, const std::string& name) {
  const json& value = require_field(object, context, name);
  if (!value.is_number()) {
    fail(Errc::parse, context + ": field '" + name + "' must be a number");
  }
  return value.get<double>();
}

void check_schema_version(const json& doc, const std::string& context) {
  const json& version = require_field(doc, context, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    fail(Errc::parse, context + ": unsupported schema version " + version.dump());
  }
}

std::string indexed(const std::string& name, std::size_t i) {
  return name + "[" + std::to_string(i) + "]";
}

// Edge object shared by graph and provenance documents.
json edge_to_json(const VertexId& from, const VertexId& to, const EdgeData& data) {
  json e;
  e["from"] = from;
  e["to"] = to;
  e["cost"] = data.transition_cost;
  if (data.probability.has_value()) {
    e["probability"] = *data.probability;
  }
  return e;
}

EdgeData edge_data_from_json(const json& e, const std::string& context) {
  EdgeData data;
  data.transition_cost = require_number(e, context, "cost");
  if (e.contains("probability")) {
    const json& p = e.at("probability");
    if (!p.is_number()) {
      fail(Errc::parse, context + ": field 'probability' must be a number");
    }
    data.probability = p.get<double>();
  }
  return data;
}

}  // namespace

Graph parse_graph_document(const std::string& text) {
  const json doc = parse_json(text);
  require_object(doc, "document");
  check_fields(doc, "document", {"schema_version", "vertices", "edges", "entry", "terminals"});
  check_schema_version(doc, "document");

  GraphBuilder builder;
  std::set<VertexId> seen;
  const json& vertices = require_array(doc, "document", "vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string context = indexed("vertices", i);
    const json& v = require_object(vertices[i], context);
    check_fields(v, context, {"id", "cost"});
    const std::string id = require_string(v, context, "id");
    if (!seen.insert(id).second) {
      fail(Errc::parse, context + ": duplicate id '" + id + "'");
    }
    builder.add_vertex(id, require_number(v, context, "cost"));
  }

  std::set<std::pair<VertexId, VertexId>> seen_edges;
  const json& edges = require_array(doc, "document", "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string context = indexed("edges", i);
    const json& e = require_object(edges[i], context);
    check_fields(e, context, {"from", "to", "cost", "probability"});
    const std::string from = require_string(e, context, "from");
    const std::string to = require_string(e, context, "to");
    if (!seen_edges.emplace(from, to).second) {
      fail(Errc::parse, context + ": duplicate edge " + from + "->" + to);
    }
    builder.add_edge(from, to, edge_data_from_json(e, context));
  }

  builder.set_entry(require_string(doc, "document", "entry"));
  std::set<VertexId> seen_terminals;
  const json& terminals = require_array(doc, "document", "terminals");
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    const std::string context = indexed("terminals", i);
    if (!terminals[i].is_string()) {
      fail(Errc::parse, context + ": expected a string");
    }
    const std::string id = terminals[i].get<std::string>();
    if (!seen_terminals.insert(id).second) {
      fail(Errc::parse, context + ": duplicate terminal '" + id + "'");
    }
    builder.add_terminal(id);
  }
  return builder.build();
}

std::string serialize_graph_document(const Graph& graph) {
  json doc;
  doc["schema_version"] = 1;
  doc["vertices"] = json::array();
  for (const auto& [id, cost] : graph.vertex_costs()) {
    json v;
    v["id"] = id;
    v["cost"] = cost;
    doc["vertices"].push_back(std::move(v));
  }
  doc["edges"] = json::array();
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      doc["edges"].push_back(edge_to_json(from, to, data));
    }
  }
  doc["entry"] = graph.entry();
  doc["terminals"] = json::array();
  for (const auto& t : graph.terminals()) {
    doc["terminals"].push_back(t);
  }
  return doc.dump(2) + "\n";
}

CostTables parse_cost_document(const std::string& text) {
  const json doc = parse_json(text);
  require_object(doc, "cost document");
  check_fields(doc, "cost document", {"schema_version", "state_costs", "transition_costs"});
  check_schema_version(doc, "cost document");

  CostTables tables;
  if (doc.contains("state_costs")) {
    const json& entries = require_array(doc, "cost document", "state_costs");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string context = indexed("state_costs", i);
      const json& v = require_object(entries[i], context);
      check_fields(v, context, {"id", "cost"});
      const std::string id = require_string(v, context, "id");
      if (!tables.state_costs.emplace(id, require_number(v, context, "cost")).second) {
        fail(Errc::parse, context + ": duplicate id '" + id + "'");
      }
    }
  }
  if (doc.contains("transition_costs")) {
    const json& entries = require_array(doc, "cost document", "transition_costs");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string context = indexed("transition_costs", i);
      const json& e = require_object(entries[i], context);
      check_fields(e, context, {"from", "to", "cost"});
      const std::string from = require_string(e, context, "from");
      const std::string to = require_string(e, context, "to");
      if (!tables.transition_costs
               .emplace(std::make_pair(from, to), require_number(e, context, "cost"))
               .second) {
        fail(Errc::parse, context + ": duplicate edge " + from + "->" + to);
      }
    }
  }
  return tables;
}

std::vector<PlanInput> parse_plans_document(const std::string& text) {
  const json doc = parse_json(text);
  require_object(doc, "plans document");
  check_fields(doc, "plans document", {"schema_version", "plans"});
  check_schema_version(doc, "plans document");

  std::vector<PlanInput> plans;
  const json& entries = require_array(doc, "plans document", "plans");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string context = indexed("plans", i);
    const json& p = require_object(entries[i], context);
    check_fields(p, context, {"savings", "labels", "observed"});
    PlanInput plan;
    const json& savings = require_array(p, context, "savings");
    for (std::size_t j = 0; j < savings.size(); ++j) {
      if (!savings[j].is_number()) {
        fail(Errc::parse, context + ": savings must be numbers");
      }
      plan.savings.push_back(savings[j].get<double>());
    }
    if (p.contains("labels")) {
      const json& labels = require_array(p, context, "labels");
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (!labels[j].is_string()) {
          fail(Errc::parse, context + ": labels must be strings");
        }
        plan.labels.push_back(labels[j].get<std::string>());
      }
    }
    if (p.contains("observed")) {
      if (!p.at("observed").is_number()) {
        fail(Errc::parse, context + ": field 'observed' must be a number");
      }
      plan.observed = p.at("observed").get<double>();
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::string serialize_provenance(const CollapseProvenance& provenance) {
  json doc;
  doc["schema_version"] = 1;
  doc["macro_id"] = provenance.macro_id;
  doc["original_entry"] = provenance.original_entry;
  doc["member_costs"] = json::array();
  for (const auto& [id, cost] : provenance.member_costs) {
    json v;
    v["id"] = id;
    v["cost"] = cost;
    doc["member_costs"].push_back(std::move(v));
  }
  doc["internal_edges"] = json::array();
  for (const auto& [from, succ] : provenance.internal_edges) {
    for (const auto& [to, data] : succ) {
      doc["internal_edges"].push_back(edge_to_json(from, to, data));
    }
  }
  auto boundary = [](const std::map<VertexId, std::pair<VertexId, EdgeData>>& edges) {
    json list = json::array();
    for (const auto& [external, rec] : edges) {
      json e;
      e["external"] = external;
      e["member"] = rec.first;
      e["cost"] = rec.second.transition_cost;
      if (rec.second.probability.has_value()) {
        e["probability"] = *rec.second.probability;
      }
      list.push_back(std::move(e));
    }
    return list;
  };
  doc["incoming"] = boundary(provenance.incoming);
  doc["outgoing"] = boundary(provenance.outgoing);
  doc["member_terminals"] = json::array();
  for (const auto& t : provenance.member_terminals) {
    doc["member_terminals"].push_back(t);
  }
  return doc.dump(2) + "\n";
}

CollapseProvenance parse_provenance(const std::string& text) {
  const json doc = parse_json(text);
  require_object(doc, "provenance");
  check_fields(doc, "provenance",
               {"schema_version", "macro_id", "original_entry", "member_costs", "internal_edges",
                "incoming", "outgoing", "member_terminals"});
  check_schema_version(doc, "provenance");

  CollapseProvenance prov;
  prov.macro_id = require_string(doc, "provenance", "macro_id");
  prov.original_entry = require_string(doc, "provenance", "original_entry");
  const json& costs = require_array(doc, "provenance", "member_costs");
  for (std::size_t i = 0; i < costs.size(); ++i) {
    const std::string context = indexed("member_costs", i);
    const json& v = require_object(costs[i], context);
    check_fields(v, context, {"id", "cost"});
    prov.member_costs[require_string(v, context, "id")] = require_number(v, context, "cost");
  }
  const json& internal = require_array(doc, "provenance", "internal_edges");
  for (std::size_t i = 0; i < internal.size(); ++i) {
    const std::string context = indexed("internal_edges", i);
    const json& e = require_object(internal[i], context);
    check_fields(e, context, {"from", "to", "cost", "probability"});
    prov.internal_edges[require_string(e, context, "from")][require_string(e, context, "to")] =
        edge_data_from_json(e, context);
  }
  auto boundary = [&doc](const std::string& name) {
    std::map<VertexId, std::pair<VertexId, EdgeData>> edges;
    const json& list = require_array(doc, "provenance", name);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string context = indexed(name, i);
      const json& e = require_object(list[i], context);
      check_fields(e, context, {"external", "member", "cost", "probability"});
      edges[require_string(e, context, "external")] =
          std::make_pair(require_string(e, context, "member"), edge_data_from_json(e, context));
    }
    return edges;
  };
  prov.incoming = boundary("incoming");
  prov.outgoing = boundary("outgoing");
  const json& terminals = require_array(doc, "provenance", "member_terminals");
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (!terminals[i].is_string()) {
      fail(Errc::parse, indexed("member_terminals", i) + ": expected a string");
    }
    prov.member_terminals.insert(terminals[i].get<std::string>());
  }
  return prov;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string export_dot(const Graph& graph) {
  std::string out = "digraph efg {\n  rankdir=LR;\n";
  for (const auto& [id, cost] : graph.vertex_costs()) {
    out += "  \"" + dot_escape(id) + "\" [label=\"" + dot_escape(id) +
           "\\ncost=" + format_double(cost) + "\"";
    if (graph.is_terminal(id)) {
      out += ", shape=doublecircle";
    }
    if (id == graph.entry()) {
      out += ", style=bold";
    }
    out += "];\n";
  }
  for (const auto& [from, succ] : graph.adjacency()) {
    for (const auto& [to, data] : succ) {
      out += "  \"" + dot_escape(from) + "\" -> \"" + dot_escape(to) + "\" [label=\"cost=" +
             format_double(data.transition_cost);
      if (data.probability.has_value()) {
        out += "\\np=" + format_double(*data.probability);
      }
      out += "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace efg
