#include "efg/efg.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "cascade.hpp"
#include "collapse.hpp"
#include "document.hpp"
#include "errors.hpp"
#include "expected.hpp"
#include "graph.hpp"
#include "impact.hpp"
#include "montecarlo.hpp"
#include "paths.hpp"
#include "policy.hpp"
#include "stats.hpp"
#include "traces.hpp"

struct efg_graph {
  efg::Graph value;
};
struct efg_builder {
  efg::GraphBuilder value;
};
struct efg_strings {
  std::vector<std::string> items;
};
struct efg_edges {
  struct Row {
    std::string from;
    std::string to;
    efg::EdgeData data;
  };
  std::vector<Row> rows;
};
struct efg_paths {
  std::vector<std::string> rendered;
  bool truncated = false;
};
struct efg_expect {
  std::vector<std::pair<std::string, double>> items;
  double residual = 0.0;
  std::vector<std::string> warnings;
};
struct efg_visits {
  std::vector<std::pair<std::string, double>> items;
  std::vector<std::string> warnings;
};
struct efg_mc {
  efg::MonteCarloReport report;
  std::vector<std::pair<std::string, std::uint64_t>> paths;
};
struct efg_policy {
  std::vector<std::pair<std::string, std::string>> choices;
  std::vector<std::pair<std::string, double>> values;
  std::string path;
};
struct efg_plans {
  std::vector<efg::CascadePlan> plans;
};
struct efg_traces {
  efg::TraceSet set;
};
struct efg_cv_table {
  efg::CvTable table;
};
struct efg_correlation {
  efg::CorrelationReport report;
};

namespace {

thread_local std::string tls_error;

efg_status map_errc(efg::Errc code) {
  switch (code) {
    case efg::Errc::invalid_argument:
      return EFG_ERR_INVALID_ARGUMENT;
    case efg::Errc::parse:
      return EFG_ERR_PARSE;
    case efg::Errc::io:
      return EFG_ERR_IO;
    case efg::Errc::invalid_graph:
      return EFG_ERR_INVALID_GRAPH;
    case efg::Errc::cycle:
      return EFG_ERR_CYCLE;
    case efg::Errc::not_stochastic:
      return EFG_ERR_NOT_STOCHASTIC;
    case efg::Errc::no_absorption:
      return EFG_ERR_NO_ABSORPTION;
    case efg::Errc::convergence:
      return EFG_ERR_CONVERGENCE;
    case efg::Errc::unknown_vertex:
      return EFG_ERR_UNKNOWN_VERTEX;
    case efg::Errc::invalid_path:
      return EFG_ERR_INVALID_PATH;
    case efg::Errc::dead_end:
      return EFG_ERR_DEAD_END;
    case efg::Errc::no_path:
      return EFG_ERR_NO_PATH;
    case efg::Errc::out_of_range:
      return EFG_ERR_OUT_OF_RANGE;
    case efg::Errc::invalid_selection:
      return EFG_ERR_INVALID_SELECTION;
    case efg::Errc::duplicate_boundary:
      return EFG_ERR_DUPLICATE_BOUNDARY;
    case efg::Errc::terminal_membership:
      return EFG_ERR_TERMINAL_MEMBERSHIP;
    case efg::Errc::empty_trace_set:
      return EFG_ERR_EMPTY_TRACE_SET;
    case efg::Errc::insufficient_samples:
      return EFG_ERR_INSUFFICIENT_SAMPLES;
    case efg::Errc::zero_mean:
      return EFG_ERR_ZERO_MEAN;
    case efg::Errc::missing_metric:
      return EFG_ERR_MISSING_METRIC;
  }
  return EFG_ERR_UNKNOWN;
}

template <typename F>
efg_status guarded(F&& f) noexcept {
  try {
    f();
    tls_error.clear();
    return EFG_OK;
  } catch (const efg::Error& e) {
    tls_error = e.what();
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    tls_error = "out of memory";
    return EFG_ERR_NOMEM;
  } catch (const std::exception& e) {
    tls_error = e.what();
    return EFG_ERR_UNKNOWN;
  }
}

efg_status null_argument() {
  tls_error = "null argument";
  return EFG_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

efg::Path parse_path_string(const std::string& text) {
  efg::Path path;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find('>', start);
    if (pos == std::string::npos) {
      path.push_back(text.substr(start));
      return path;
    }
    path.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::set<efg::VertexId> member_set(const char* const* members, size_t member_count) {
  std::set<efg::VertexId> out;
  for (size_t i = 0; i < member_count; ++i) {
    if (members[i] == nullptr) {
      efg::fail(efg::Errc::invalid_argument, "null member id");
    }
    out.insert(members[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char* efg_status_name(efg_status status) {
  switch (status) {
    case EFG_OK:
      return "ok";
    case EFG_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case EFG_ERR_PARSE:
      return "parse";
    case EFG_ERR_IO:
      return "io";
    case EFG_ERR_INVALID_GRAPH:
      return "invalid-graph";
    case EFG_ERR_CYCLE:
      return "cycle";
    case EFG_ERR_NOT_STOCHASTIC:
      return "not-stochastic";
    case EFG_ERR_NO_ABSORPTION:
      return "no-absorption";
    case EFG_ERR_CONVERGENCE:
      return "convergence";
    case EFG_ERR_UNKNOWN_VERTEX:
      return "unknown-vertex";
    case EFG_ERR_INVALID_PATH:
      return "invalid-path";
    case EFG_ERR_DEAD_END:
      return "dead-end";
    case EFG_ERR_NO_PATH:
      return "no-path";
    case EFG_ERR_OUT_OF_RANGE:
      return "out-of-range";
    case EFG_ERR_INVALID_SELECTION:
      return "invalid-selection";
    case EFG_ERR_DUPLICATE_BOUNDARY:
      return "duplicate-boundary";
    case EFG_ERR_TERMINAL_MEMBERSHIP:
      return "terminal-membership";
    case EFG_ERR_EMPTY_TRACE_SET:
      return "empty-trace-set";
    case EFG_ERR_INSUFFICIENT_SAMPLES:
      return "insufficient-samples";
    case EFG_ERR_ZERO_MEAN:
      return "zero-mean";
    case EFG_ERR_MISSING_METRIC:
      return "missing-metric";
    case EFG_ERR_NOMEM:
      return "out-of-memory";
    case EFG_ERR_UNKNOWN:
      return "unknown";
  }
  return "unknown";
}

const char* efg_last_error(void) { return tls_error.c_str(); }

void efg_string_free(char* s) { std::free(s); }

/* ---- string lists ---- */

size_t efg_strings_count(const efg_strings* strings) {
  return strings == nullptr ? 0 : strings->items.size();
}

const char* efg_strings_get(const efg_strings* strings, size_t i) {
  if (strings == nullptr || i >= strings->items.size()) {
    return nullptr;
  }
  return strings->items[i].c_str();
}

void efg_strings_free(efg_strings* strings) { delete strings; }

/* ---- graph construction ---- */

efg_builder* efg_builder_new(void) { return new (std::nothrow) efg_builder(); }

void efg_builder_free(efg_builder* builder) { delete builder; }

efg_status efg_builder_add_vertex(efg_builder* builder, const char* id, double cost) {
  if (builder == nullptr || id == nullptr) {
    return null_argument();
  }
  return guarded([&] { builder->value.add_vertex(id, cost); });
}

efg_status efg_builder_add_edge(efg_builder* builder, const char* from, const char* to,
                                double cost) {
  if (builder == nullptr || from == nullptr || to == nullptr) {
    return null_argument();
  }
  return guarded([&] { builder->value.add_edge(from, to, cost); });
}

efg_status efg_builder_add_edge_p(efg_builder* builder, const char* from, const char* to,
                                  double cost, double probability) {
  if (builder == nullptr || from == nullptr || to == nullptr) {
    return null_argument();
  }
  return guarded([&] { builder->value.add_edge(from, to, cost, probability); });
}

efg_status efg_builder_set_entry(efg_builder* builder, const char* id) {
  if (builder == nullptr || id == nullptr) {
    return null_argument();
  }
  return guarded([&] { builder->value.set_entry(id); });
}

efg_status efg_builder_add_terminal(efg_builder* builder, const char* id) {
  if (builder == nullptr || id == nullptr) {
    return null_argument();
  }
  return guarded([&] { builder->value.add_terminal(id); });
}

efg_status efg_builder_build(const efg_builder* builder, efg_graph** out) {
  if (builder == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = new efg_graph{builder->value.build()}; });
}

void efg_graph_free(efg_graph* graph) { delete graph; }

/* ---- graph documents ---- */

efg_status efg_graph_parse(const char* json_text, efg_graph** out) {
  if (json_text == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = new efg_graph{efg::parse_graph_document(json_text)}; });
}

efg_status efg_graph_serialize(const efg_graph* graph, char** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = dup_string(efg::serialize_graph_document(graph->value)); });
}

efg_status efg_graph_export_dot(const efg_graph* graph, char** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = dup_string(efg::export_dot(graph->value)); });
}

/* ---- graph queries ---- */

size_t efg_graph_vertex_count(const efg_graph* graph) {
  return graph == nullptr ? 0 : graph->value.vertex_count();
}

size_t efg_graph_edge_count(const efg_graph* graph) {
  return graph == nullptr ? 0 : graph->value.edge_count();
}

const char* efg_graph_entry(const efg_graph* graph) {
  return graph == nullptr ? nullptr : graph->value.entry().c_str();
}

int efg_graph_is_valid(const efg_graph* graph) {
  return graph != nullptr && graph->value.is_valid() ? 1 : 0;
}

int efg_graph_is_stochastic(const efg_graph* graph) {
  return graph != nullptr && graph->value.is_stochastic() ? 1 : 0;
}

int efg_graph_equal(const efg_graph* a, const efg_graph* b) {
  if (a == nullptr || b == nullptr) {
    return a == b ? 1 : 0;
  }
  return a->value == b->value ? 1 : 0;
}

efg_status efg_graph_vertex_cost(const efg_graph* graph, const char* id, double* out) {
  if (graph == nullptr || id == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = graph->value.state_cost(id); });
}

efg_status efg_graph_vertices(const efg_graph* graph, efg_strings** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    auto list = std::make_unique<efg_strings>();
    for (const auto& [id, cost] : graph->value.vertex_costs()) {
      list->items.push_back(id);
    }
    *out = list.release();
  });
}

efg_status efg_graph_terminals(const efg_graph* graph, efg_strings** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    auto list = std::make_unique<efg_strings>();
    list->items.assign(graph->value.terminals().begin(), graph->value.terminals().end());
    *out = list.release();
  });
}

efg_status efg_graph_edges(const efg_graph* graph, efg_edges** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    auto list = std::make_unique<efg_edges>();
    for (const auto& [from, succ] : graph->value.adjacency()) {
      for (const auto& [to, data] : succ) {
        list->rows.push_back(efg_edges::Row{from, to, data});
      }
    }
    *out = list.release();
  });
}

size_t efg_edges_count(const efg_edges* edges) {
  return edges == nullptr ? 0 : edges->rows.size();
}

const char* efg_edges_from(const efg_edges* edges, size_t i) {
  if (edges == nullptr || i >= edges->rows.size()) {
    return nullptr;
  }
  return edges->rows[i].from.c_str();
}

const char* efg_edges_to(const efg_edges* edges, size_t i) {
  if (edges == nullptr || i >= edges->rows.size()) {
    return nullptr;
  }
  return edges->rows[i].to.c_str();
}

double efg_edges_cost(const efg_edges* edges, size_t i) {
  if (edges == nullptr || i >= edges->rows.size()) {
    return 0.0;
  }
  return edges->rows[i].data.transition_cost;
}

int efg_edges_probability(const efg_edges* edges, size_t i, double* out) {
  if (edges == nullptr || i >= edges->rows.size() ||
      !edges->rows[i].data.probability.has_value()) {
    return 0;
  }
  if (out != nullptr) {
    *out = *edges->rows[i].data.probability;
  }
  return 1;
}

void efg_edges_free(efg_edges* edges) { delete edges; }

efg_status efg_graph_validate(const efg_graph* graph, efg_strings** violations) {
  if (graph == nullptr || violations == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    auto out = std::make_unique<efg_strings>();
    for (const efg::Violation& v : graph->value.violations()) {
      out->items.push_back(v.message);
    }
    *violations = out.release();
  });
}

/* ---- paths ---- */

efg_status efg_path_energy(const efg_graph* graph, const char* path, double* out) {
  if (graph == nullptr || path == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = efg::path_energy(graph->value, parse_path_string(path)); });
}

efg_status efg_enumerate_paths(const efg_graph* graph, uint64_t max_paths, efg_paths** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::PathEnumeration enumeration = efg::enumerate_paths(graph->value, max_paths);
    auto handle = std::make_unique<efg_paths>();
    handle->truncated = enumeration.truncated;
    for (const efg::Path& p : enumeration.paths) {
      handle->rendered.push_back(efg::path_to_string(p));
    }
    *out = handle.release();
  });
}

size_t efg_paths_count(const efg_paths* paths) {
  return paths == nullptr ? 0 : paths->rendered.size();
}

const char* efg_paths_get(const efg_paths* paths, size_t i) {
  if (paths == nullptr || i >= paths->rendered.size()) {
    return nullptr;
  }
  return paths->rendered[i].c_str();
}

int efg_paths_truncated(const efg_paths* paths) {
  return paths != nullptr && paths->truncated ? 1 : 0;
}

void efg_paths_free(efg_paths* paths) { delete paths; }

/* ---- extremal bounds ---- */

efg_status efg_energy_bounds(const efg_graph* graph, double* bcec, double* wcec,
                             char** bcec_path, char** wcec_path) {
  if (graph == nullptr || bcec == nullptr || wcec == nullptr || bcec_path == nullptr ||
      wcec_path == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::EnergyBounds bounds = efg::energy_bounds(graph->value);
    *bcec = bounds.bcec;
    *wcec = bounds.wcec;
    *bcec_path = dup_string(efg::path_to_string(bounds.bcec_path));
    *wcec_path = dup_string(efg::path_to_string(bounds.wcec_path));
  });
}

/* ---- expected energy ---- */

efg_status efg_expected_energy(const efg_graph* graph, efg_method method, double tolerance,
                               uint64_t max_iterations, efg_expect** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  if (method != EFG_METHOD_LINEAR_SOLVE && method != EFG_METHOD_VALUE_ITERATION) {
    tls_error = "unknown method";
    return EFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    efg::ExpectedEnergyReport report = efg::expected_energy(
        graph->value,
        method == EFG_METHOD_LINEAR_SOLVE ? efg::ExpectMethod::linear_solve
                                          : efg::ExpectMethod::value_iteration,
        tolerance, max_iterations);
    auto handle = std::make_unique<efg_expect>();
    handle->items.assign(report.per_vertex.begin(), report.per_vertex.end());
    handle->residual = report.residual;
    handle->warnings = std::move(report.warnings);
    *out = handle.release();
  });
}

size_t efg_expect_count(const efg_expect* expect) {
  return expect == nullptr ? 0 : expect->items.size();
}

const char* efg_expect_vertex(const efg_expect* expect, size_t i) {
  if (expect == nullptr || i >= expect->items.size()) {
    return nullptr;
  }
  return expect->items[i].first.c_str();
}

double efg_expect_value(const efg_expect* expect, size_t i) {
  if (expect == nullptr || i >= expect->items.size()) {
    return 0.0;
  }
  return expect->items[i].second;
}

double efg_expect_residual(const efg_expect* expect) {
  return expect == nullptr ? 0.0 : expect->residual;
}

size_t efg_expect_warning_count(const efg_expect* expect) {
  return expect == nullptr ? 0 : expect->warnings.size();
}

const char* efg_expect_warning(const efg_expect* expect, size_t i) {
  if (expect == nullptr || i >= expect->warnings.size()) {
    return nullptr;
  }
  return expect->warnings[i].c_str();
}

void efg_expect_free(efg_expect* expect) { delete expect; }

efg_status efg_expected_visits(const efg_graph* graph, efg_visits** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::VisitCountReport report = efg::expected_visits(graph->value);
    auto handle = std::make_unique<efg_visits>();
    handle->items.assign(report.per_vertex.begin(), report.per_vertex.end());
    handle->warnings = std::move(report.warnings);
    *out = handle.release();
  });
}

size_t efg_visits_count(const efg_visits* visits) {
  return visits == nullptr ? 0 : visits->items.size();
}

const char* efg_visits_vertex(const efg_visits* visits, size_t i) {
  if (visits == nullptr || i >= visits->items.size()) {
    return nullptr;
  }
  return visits->items[i].first.c_str();
}

double efg_visits_value(const efg_visits* visits, size_t i) {
  if (visits == nullptr || i >= visits->items.size()) {
    return 0.0;
  }
  return visits->items[i].second;
}

size_t efg_visits_warning_count(const efg_visits* visits) {
  return visits == nullptr ? 0 : visits->warnings.size();
}

const char* efg_visits_warning(const efg_visits* visits, size_t i) {
  if (visits == nullptr || i >= visits->warnings.size()) {
    return nullptr;
  }
  return visits->warnings[i].c_str();
}

void efg_visits_free(efg_visits* visits) { delete visits; }

/* ---- randomized sampling ---- */

efg_status efg_monte_carlo(const efg_graph* graph, uint64_t samples, uint64_t seed,
                           efg_mc** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::MonteCarloReport report = efg::monte_carlo_energy(graph->value, samples, seed);
    auto handle = std::make_unique<efg_mc>();
    handle->paths.assign(report.path_counts.begin(), report.path_counts.end());
    handle->report = std::move(report);
    *out = handle.release();
  });
}

uint64_t efg_mc_samples(const efg_mc* mc) { return mc == nullptr ? 0 : mc->report.samples; }

uint64_t efg_mc_seed(const efg_mc* mc) { return mc == nullptr ? 0 : mc->report.seed; }

double efg_mc_mean(const efg_mc* mc) { return mc == nullptr ? 0.0 : mc->report.mean; }

double efg_mc_std(const efg_mc* mc) { return mc == nullptr ? 0.0 : mc->report.std_dev; }

double efg_mc_min(const efg_mc* mc) { return mc == nullptr ? 0.0 : mc->report.min_energy; }

double efg_mc_max(const efg_mc* mc) { return mc == nullptr ? 0.0 : mc->report.max_energy; }

size_t efg_mc_path_count(const efg_mc* mc) { return mc == nullptr ? 0 : mc->paths.size(); }

const char* efg_mc_path(const efg_mc* mc, size_t i) {
  if (mc == nullptr || i >= mc->paths.size()) {
    return nullptr;
  }
  return mc->paths[i].first.c_str();
}

uint64_t efg_mc_path_hits(const efg_mc* mc, size_t i) {
  if (mc == nullptr || i >= mc->paths.size()) {
    return 0;
  }
  return mc->paths[i].second;
}

void efg_mc_free(efg_mc* mc) { delete mc; }

efg_status efg_sample_run(const efg_graph* graph, uint64_t seed, uint64_t index, char** path,
                          double* energy) {
  if (graph == nullptr || path == nullptr || energy == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    graph->value.require_valid();
    efg::require_stochastic(graph->value);
    efg::require_absorption(graph->value);
    efg::SampledRun run = efg::sample_run(graph->value, seed, index);
    *path = dup_string(efg::path_to_string(run.path));
    *energy = run.energy;
  });
}

/* ---- policy ---- */

efg_status efg_optimal_policy(const efg_graph* graph, efg_policy** out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::OptimalPolicy policy = efg::optimal_policy(graph->value);
    auto handle = std::make_unique<efg_policy>();
    handle->choices.assign(policy.per_vertex.begin(), policy.per_vertex.end());
    handle->values.assign(policy.optimal_energy.begin(), policy.optimal_energy.end());
    handle->path = efg::path_to_string(policy.induced_path);
    *out = handle.release();
  });
}

size_t efg_policy_choice_count(const efg_policy* policy) {
  return policy == nullptr ? 0 : policy->choices.size();
}

const char* efg_policy_choice_vertex(const efg_policy* policy, size_t i) {
  if (policy == nullptr || i >= policy->choices.size()) {
    return nullptr;
  }
  return policy->choices[i].first.c_str();
}

const char* efg_policy_choice_successor(const efg_policy* policy, size_t i) {
  if (policy == nullptr || i >= policy->choices.size()) {
    return nullptr;
  }
  return policy->choices[i].second.c_str();
}

size_t efg_policy_value_count(const efg_policy* policy) {
  return policy == nullptr ? 0 : policy->values.size();
}

const char* efg_policy_value_vertex(const efg_policy* policy, size_t i) {
  if (policy == nullptr || i >= policy->values.size()) {
    return nullptr;
  }
  return policy->values[i].first.c_str();
}

double efg_policy_value_energy(const efg_policy* policy, size_t i) {
  if (policy == nullptr || i >= policy->values.size()) {
    return 0.0;
  }
  return policy->values[i].second;
}

const char* efg_policy_path(const efg_policy* policy) {
  return policy == nullptr ? nullptr : policy->path.c_str();
}

void efg_policy_free(efg_policy* policy) { delete policy; }

/* ---- node impact ---- */

efg_status efg_node_impact(const efg_graph* graph, const char* vertex, double old_cost,
                           double new_cost, efg_impact_method method, double* out) {
  if (graph == nullptr || vertex == nullptr || out == nullptr) {
    return null_argument();
  }
  if (method != EFG_IMPACT_PATH_ENUMERATION && method != EFG_IMPACT_VISIT_COUNTS) {
    tls_error = "unknown method";
    return EFG_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    *out = efg::node_impact(graph->value, efg::NodeOptimization{vertex, old_cost, new_cost},
                            method == EFG_IMPACT_PATH_ENUMERATION
                                ? efg::ImpactMethod::path_enumeration
                                : efg::ImpactMethod::visit_counts);
  });
}

/* ---- cascade model ---- */

efg_status efg_cascade_predict(const double* savings, size_t count, double* out) {
  if (savings == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    *out = efg::cascade_predict(std::vector<double>(savings, savings + count))
               .predicted_combined;
  });
}

double efg_cascade_compare(double predicted, double observed) {
  return efg::cascade_compare(predicted, observed);
}

efg_status efg_cascade_format_pp(double raw_pp, char** out) {
  if (out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = dup_string(efg::format_pp(raw_pp)); });
}

efg_plans* efg_plans_new(void) { return new (std::nothrow) efg_plans(); }

void efg_plans_free(efg_plans* plans) { delete plans; }

efg_status efg_plans_add(efg_plans* plans, const double* savings, size_t count,
                         const char* const* labels, size_t label_count,
                         const double* observed) {
  if (plans == nullptr || savings == nullptr || (labels == nullptr && label_count > 0)) {
    return null_argument();
  }
  return guarded([&] {
    std::vector<std::string> label_vec;
    for (size_t i = 0; i < label_count; ++i) {
      if (labels[i] == nullptr) {
        efg::fail(efg::Errc::invalid_argument, "null label");
      }
      label_vec.emplace_back(labels[i]);
    }
    efg::CascadePlan plan = efg::cascade_predict(
        std::vector<double>(savings, savings + count), std::move(label_vec));
    if (observed != nullptr) {
      plan.observed_combined = *observed;
    }
    plans->plans.push_back(std::move(plan));
  });
}

efg_status efg_plans_parse(const char* json_text, efg_plans** out) {
  if (json_text == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    auto handle = std::make_unique<efg_plans>();
    for (efg::PlanInput& input : efg::parse_plans_document(json_text)) {
      efg::CascadePlan plan =
          efg::cascade_predict(std::move(input.savings), std::move(input.labels));
      plan.observed_combined = input.observed;
      handle->plans.push_back(std::move(plan));
    }
    *out = handle.release();
  });
}

efg_status efg_cascade_rank(const efg_plans* plans, size_t top_k, efg_plans** out) {
  if (plans == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = new efg_plans{efg::cascade_rank(plans->plans, top_k)}; });
}

size_t efg_plans_count(const efg_plans* plans) {
  return plans == nullptr ? 0 : plans->plans.size();
}

double efg_plans_predicted(const efg_plans* plans, size_t i) {
  if (plans == nullptr || i >= plans->plans.size()) {
    return 0.0;
  }
  return plans->plans[i].predicted_combined;
}

int efg_plans_observed(const efg_plans* plans, size_t i, double* out) {
  if (plans == nullptr || i >= plans->plans.size() ||
      !plans->plans[i].observed_combined.has_value()) {
    return 0;
  }
  if (out != nullptr) {
    *out = *plans->plans[i].observed_combined;
  }
  return 1;
}

size_t efg_plans_savings_count(const efg_plans* plans, size_t i) {
  if (plans == nullptr || i >= plans->plans.size()) {
    return 0;
  }
  return plans->plans[i].savings.size();
}

double efg_plans_saving(const efg_plans* plans, size_t i, size_t j) {
  if (plans == nullptr || i >= plans->plans.size() || j >= plans->plans[i].savings.size()) {
    return 0.0;
  }
  return plans->plans[i].savings[j];
}

size_t efg_plans_label_count(const efg_plans* plans, size_t i) {
  if (plans == nullptr || i >= plans->plans.size()) {
    return 0;
  }
  return plans->plans[i].labels.size();
}

const char* efg_plans_label(const efg_plans* plans, size_t i, size_t j) {
  if (plans == nullptr || i >= plans->plans.size() || j >= plans->plans[i].labels.size()) {
    return nullptr;
  }
  return plans->plans[i].labels[j].c_str();
}

/* ---- hierarchical composition ---- */

efg_status efg_collapse(const efg_graph* graph, const char* const* members,
                        size_t member_count, const char* macro_id, efg_graph** out,
                        char** provenance_json) {
  if (graph == nullptr || members == nullptr || macro_id == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::SubgraphSelection selection{member_set(members, member_count), macro_id};
    efg::CollapseResult result = efg::collapse(graph->value, selection);
    if (provenance_json != nullptr) {
      *provenance_json = dup_string(efg::serialize_provenance(result.provenance));
    }
    *out = new efg_graph{std::move(result.graph)};
  });
}

efg_status efg_expand(const efg_graph* graph, const char* provenance_json, efg_graph** out) {
  if (graph == nullptr || provenance_json == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::CollapseProvenance prov = efg::parse_provenance(provenance_json);
    *out = new efg_graph{efg::expand(graph->value, prov)};
  });
}

efg_status efg_total_energy(const efg_graph* graph, double* out) {
  if (graph == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = efg::total_graph_energy(graph->value); });
}

efg_status efg_subgraph_cost(const efg_graph* graph, const char* const* members,
                             size_t member_count, double* out) {
  if (graph == nullptr || members == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded(
      [&] { *out = efg::subgraph_cost(graph->value, member_set(members, member_count)); });
}

/* ---- traces ---- */

efg_status efg_traces_parse(const char* text, efg_traces** out) {
  if (text == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] { *out = new efg_traces{efg::parse_traces(text)}; });
}

size_t efg_traces_run_count(const efg_traces* traces) {
  return traces == nullptr ? 0 : traces->set.runs.size();
}

void efg_traces_free(efg_traces* traces) { delete traces; }

efg_status efg_estimate_graph(const efg_traces* traces, const char* cost_json,
                              efg_graph** out, efg_strings** warnings) {
  if (traces == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::CostTables costs;
    if (cost_json != nullptr) {
      costs = efg::parse_cost_document(cost_json);
    }
    efg::EstimatedGraph estimated =
        efg::estimate_graph(traces->set, costs.state_costs, costs.transition_costs);
    if (warnings != nullptr) {
      auto list = std::make_unique<efg_strings>();
      list->items = std::move(estimated.warnings);
      *warnings = list.release();
    }
    *out = new efg_graph{std::move(estimated.graph)};
  });
}

efg_status efg_energy_cv(const double* energies, size_t count, double* mean, double* std_dev,
                         double* cv) {
  if (energies == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::VarianceStats stats = efg::energy_cv(std::vector<double>(energies, energies + count));
    if (mean != nullptr) {
      *mean = stats.mean;
    }
    if (std_dev != nullptr) {
      *std_dev = stats.std_dev;
    }
    if (cv != nullptr) {
      *cv = stats.cv;
    }
  });
}

efg_status efg_trace_cv(const efg_traces* traces, efg_cv_table** out, efg_strings** warnings) {
  if (traces == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    efg::CvTable table = efg::trace_cv(traces->set);
    if (warnings != nullptr) {
      auto list = std::make_unique<efg_strings>();
      list->items = table.warnings;
      *warnings = list.release();
    }
    *out = new efg_cv_table{std::move(table)};
  });
}

size_t efg_cv_count(const efg_cv_table* table) {
  return table == nullptr ? 0 : table->table.rows.size();
}

const char* efg_cv_unit(const efg_cv_table* table, size_t i) {
  if (table == nullptr || i >= table->table.rows.size()) {
    return nullptr;
  }
  return table->table.rows[i].unit.c_str();
}

size_t efg_cv_runs(const efg_cv_table* table, size_t i) {
  if (table == nullptr || i >= table->table.rows.size()) {
    return 0;
  }
  return table->table.rows[i].runs;
}

double efg_cv_mean(const efg_cv_table* table, size_t i) {
  if (table == nullptr || i >= table->table.rows.size()) {
    return 0.0;
  }
  return table->table.rows[i].stats.mean;
}

double efg_cv_std(const efg_cv_table* table, size_t i) {
  if (table == nullptr || i >= table->table.rows.size()) {
    return 0.0;
  }
  return table->table.rows[i].stats.std_dev;
}

double efg_cv_value(const efg_cv_table* table, size_t i) {
  if (table == nullptr || i >= table->table.rows.size()) {
    return 0.0;
  }
  return table->table.rows[i].stats.cv;
}

void efg_cv_free(efg_cv_table* table) { delete table; }

efg_status efg_flag_path_dependent(const efg_cv_table* table, double threshold,
                                   efg_strings** flagged, double* fraction) {
  if (table == nullptr || flagged == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    std::map<std::string, efg::VarianceStats> stats;
    for (const efg::CvRow& row : table->table.rows) {
      stats[row.unit] = row.stats;
    }
    efg::FlagReport report = efg::flag_path_dependent(stats, threshold);
    auto list = std::make_unique<efg_strings>();
    list->items.assign(report.flagged.begin(), report.flagged.end());
    if (fraction != nullptr) {
      *fraction = report.fraction;
    }
    *flagged = list.release();
  });
}

efg_status efg_variance_correlation(const efg_traces* traces, const char* metric_a,
                                    const char* metric_b, efg_correlation** out) {
  if (traces == nullptr || metric_a == nullptr || metric_b == nullptr || out == nullptr) {
    return null_argument();
  }
  return guarded([&] {
    *out = new efg_correlation{efg::variance_correlation(traces->set, metric_a, metric_b)};
  });
}

size_t efg_correlation_count(const efg_correlation* correlation) {
  return correlation == nullptr ? 0 : correlation->report.per_unit.size();
}

const char* efg_correlation_unit(const efg_correlation* correlation, size_t i) {
  if (correlation == nullptr || i >= correlation->report.per_unit.size()) {
    return nullptr;
  }
  return correlation->report.per_unit[i].unit.c_str();
}

size_t efg_correlation_runs(const efg_correlation* correlation, size_t i) {
  if (correlation == nullptr || i >= correlation->report.per_unit.size()) {
    return 0;
  }
  return correlation->report.per_unit[i].runs;
}

double efg_correlation_std_a(const efg_correlation* correlation, size_t i) {
  if (correlation == nullptr || i >= correlation->report.per_unit.size()) {
    return 0.0;
  }
  return correlation->report.per_unit[i].std_a;
}

double efg_correlation_std_b(const efg_correlation* correlation, size_t i) {
  if (correlation == nullptr || i >= correlation->report.per_unit.size()) {
    return 0.0;
  }
  return correlation->report.per_unit[i].std_b;
}

double efg_correlation_r(const efg_correlation* correlation) {
  return correlation == nullptr ? 0.0 : correlation->report.pearson_r;
}

void efg_correlation_free(efg_correlation* correlation) { delete correlation; }

}  // extern "C"
