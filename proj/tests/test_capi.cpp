// Black-box checks against the shared-library interface: only the public
// header is included, so these exercise exactly what external callers get.
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

#include "efg/efg.h"

namespace {

struct GraphHandle {
  efg_graph* g = nullptr;
  ~GraphHandle() { efg_graph_free(g); }
};

efg_graph* make_diamond() {
  efg_builder* b = efg_builder_new();
  REQUIRE(b != nullptr);
  CHECK(efg_builder_add_vertex(b, "A", 1.0) == EFG_OK);
  CHECK(efg_builder_add_vertex(b, "B", 2.0) == EFG_OK);
  CHECK(efg_builder_add_vertex(b, "C", 4.0) == EFG_OK);
  CHECK(efg_builder_add_vertex(b, "D", 1.0) == EFG_OK);
  CHECK(efg_builder_add_edge_p(b, "A", "B", 0.5, 0.6) == EFG_OK);
  CHECK(efg_builder_add_edge_p(b, "A", "C", 1.0, 0.4) == EFG_OK);
  CHECK(efg_builder_add_edge_p(b, "B", "D", 0.5, 1.0) == EFG_OK);
  CHECK(efg_builder_add_edge_p(b, "C", "D", 0.5, 1.0) == EFG_OK);
  CHECK(efg_builder_set_entry(b, "A") == EFG_OK);
  CHECK(efg_builder_add_terminal(b, "D") == EFG_OK);
  efg_graph* g = nullptr;
  CHECK(efg_builder_build(b, &g) == EFG_OK);
  efg_builder_free(b);
  return g;
}

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  efg_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names are stable identifiers") {
  CHECK(std::string(efg_status_name(EFG_OK)) == "ok");
  CHECK(std::string(efg_status_name(EFG_ERR_INVALID_GRAPH)) == "invalid-graph");
  CHECK(std::string(efg_status_name(EFG_ERR_DUPLICATE_BOUNDARY)) == "duplicate-boundary");
  CHECK(std::string(efg_status_name(EFG_ERR_NOMEM)) == "out-of-memory");
}

TEST_CASE("builder and graph queries work through the interface") {
  GraphHandle h{make_diamond()};
  CHECK(efg_graph_vertex_count(h.g) == 4);
  CHECK(efg_graph_edge_count(h.g) == 4);
  CHECK(std::string(efg_graph_entry(h.g)) == "A");
  CHECK(efg_graph_is_valid(h.g) == 1);
  CHECK(efg_graph_is_stochastic(h.g) == 1);

  double cost = 0.0;
  CHECK(efg_graph_vertex_cost(h.g, "C", &cost) == EFG_OK);
  CHECK(cost == 4.0);
  CHECK(efg_graph_vertex_cost(h.g, "Z", &cost) == EFG_ERR_UNKNOWN_VERTEX);
  CHECK(std::string(efg_last_error()) == "unknown vertex 'Z'");

  efg_strings* vertices = nullptr;
  REQUIRE(efg_graph_vertices(h.g, &vertices) == EFG_OK);
  REQUIRE(efg_strings_count(vertices) == 4);
  CHECK(std::string(efg_strings_get(vertices, 0)) == "A");
  CHECK(std::string(efg_strings_get(vertices, 3)) == "D");
  CHECK(efg_strings_get(vertices, 4) == nullptr);
  efg_strings_free(vertices);

  efg_edges* edges = nullptr;
  REQUIRE(efg_graph_edges(h.g, &edges) == EFG_OK);
  REQUIRE(efg_edges_count(edges) == 4);
  CHECK(std::string(efg_edges_from(edges, 0)) == "A");
  CHECK(std::string(efg_edges_to(edges, 0)) == "B");
  CHECK(efg_edges_cost(edges, 0) == 0.5);
  double p = 0.0;
  CHECK(efg_edges_probability(edges, 0, &p) == 1);
  CHECK(p == 0.6);
  CHECK(efg_edges_from(edges, 9) == nullptr);
  efg_edges_free(edges);
}

TEST_CASE("duplicate construction fails with a message") {
  efg_builder* b = efg_builder_new();
  CHECK(efg_builder_add_vertex(b, "A", 1.0) == EFG_OK);
  CHECK(efg_builder_add_vertex(b, "A", 1.0) == EFG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(efg_last_error()) == "duplicate vertex 'A'");
  efg_builder_free(b);
}

TEST_CASE("null arguments are rejected uniformly") {
  CHECK(efg_graph_parse(nullptr, nullptr) == EFG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(efg_last_error()) == "null argument");
  CHECK(efg_graph_vertex_count(nullptr) == 0);
  CHECK(efg_graph_entry(nullptr) == nullptr);
  CHECK(efg_strings_count(nullptr) == 0);
  CHECK(efg_strings_get(nullptr, 0) == nullptr);
  efg_strings_free(nullptr);
  efg_graph_free(nullptr);
  efg_string_free(nullptr);
  efg_edges_free(nullptr);
}

TEST_CASE("document round-trip through the interface") {
  GraphHandle h{make_diamond()};
  char* text = nullptr;
  REQUIRE(efg_graph_serialize(h.g, &text) == EFG_OK);
  const std::string doc = take(text);

  efg_graph* parsed = nullptr;
  REQUIRE(efg_graph_parse(doc.c_str(), &parsed) == EFG_OK);
  GraphHandle h2{parsed};
  CHECK(efg_graph_equal(h.g, parsed) == 1);

  CHECK(efg_graph_parse("{", &parsed) == EFG_ERR_PARSE);

  char* dot = nullptr;
  REQUIRE(efg_graph_export_dot(h.g, &dot) == EFG_OK);
  const std::string rendered = take(dot);
  CHECK(rendered.find("digraph efg") != std::string::npos);
  CHECK(rendered.find("\"A\" -> \"B\"") != std::string::npos);
}

TEST_CASE("validation lists violations through the interface") {
  efg_builder* b = efg_builder_new();
  CHECK(efg_builder_add_vertex(b, "A", -1.0) == EFG_OK);
  efg_graph* g = nullptr;
  REQUIRE(efg_builder_build(b, &g) == EFG_OK);
  efg_builder_free(b);
  GraphHandle h{g};

  CHECK(efg_graph_is_valid(g) == 0);
  efg_strings* violations = nullptr;
  REQUIRE(efg_graph_validate(g, &violations) == EFG_OK);
  CHECK(efg_strings_count(violations) == 3);
  efg_strings_free(violations);
}

TEST_CASE("path energy and enumeration through the interface") {
  GraphHandle h{make_diamond()};
  double energy = 0.0;
  CHECK(efg_path_energy(h.g, "A>B>D", &energy) == EFG_OK);
  CHECK(energy == 5.0);
  CHECK(efg_path_energy(h.g, "A>D", &energy) == EFG_ERR_INVALID_PATH);
  CHECK(std::string(efg_last_error()) == "missing edge A->D");

  efg_paths* paths = nullptr;
  REQUIRE(efg_enumerate_paths(h.g, 100, &paths) == EFG_OK);
  REQUIRE(efg_paths_count(paths) == 2);
  CHECK(std::string(efg_paths_get(paths, 0)) == "A>B>D");
  CHECK(std::string(efg_paths_get(paths, 1)) == "A>C>D");
  CHECK(efg_paths_truncated(paths) == 0);
  efg_paths_free(paths);
}

TEST_CASE("bounds and expectation through the interface") {
  GraphHandle h{make_diamond()};
  double bcec = 0.0;
  double wcec = 0.0;
  char* bcec_path = nullptr;
  char* wcec_path = nullptr;
  REQUIRE(efg_energy_bounds(h.g, &bcec, &wcec, &bcec_path, &wcec_path) == EFG_OK);
  CHECK(bcec == 5.0);
  CHECK(wcec == 7.5);
  CHECK(take(bcec_path) == "A>B>D");
  CHECK(take(wcec_path) == "A>C>D");

  for (efg_method method : {EFG_METHOD_LINEAR_SOLVE, EFG_METHOD_VALUE_ITERATION}) {
    efg_expect* expect = nullptr;
    REQUIRE(efg_expected_energy(h.g, method, EFG_DEFAULT_TOLERANCE,
                                EFG_DEFAULT_MAX_ITERATIONS, &expect) == EFG_OK);
    REQUIRE(efg_expect_count(expect) == 4);
    CHECK(std::string(efg_expect_vertex(expect, 0)) == "A");
    CHECK(std::fabs(efg_expect_value(expect, 0) - 6.0) < 1e-7);
    CHECK(efg_expect_residual(expect) <= 1e-7);
    CHECK(efg_expect_warning_count(expect) == 0);
    efg_expect_free(expect);
  }

  efg_visits* visits = nullptr;
  REQUIRE(efg_expected_visits(h.g, &visits) == EFG_OK);
  REQUIRE(efg_visits_count(visits) == 4);
  CHECK(std::string(efg_visits_vertex(visits, 1)) == "B");
  CHECK(std::fabs(efg_visits_value(visits, 1) - 0.6) < 1e-12);
  efg_visits_free(visits);
}

TEST_CASE("sampling through the interface") {
  GraphHandle h{make_diamond()};
  efg_mc* mc = nullptr;
  REQUIRE(efg_monte_carlo(h.g, 20000, 42, &mc) == EFG_OK);
  CHECK(efg_mc_samples(mc) == 20000);
  CHECK(efg_mc_seed(mc) == 42);
  CHECK(efg_mc_min(mc) == 5.0);
  CHECK(efg_mc_max(mc) == 7.5);
  CHECK(std::fabs(efg_mc_mean(mc) - 6.0) < 0.05);
  REQUIRE(efg_mc_path_count(mc) == 2);
  std::uint64_t hits = efg_mc_path_hits(mc, 0) + efg_mc_path_hits(mc, 1);
  CHECK(hits == 20000);

  char* path = nullptr;
  double energy = 0.0;
  REQUIRE(efg_sample_run(h.g, 42, 0, &path, &energy) == EFG_OK);
  const std::string first = take(path);
  CHECK((first == "A>B>D" || first == "A>C>D"));
  CHECK((energy == 5.0 || energy == 7.5));
  efg_mc_free(mc);

  CHECK(efg_monte_carlo(h.g, 0, 1, &mc) == EFG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("policy and impact through the interface") {
  GraphHandle h{make_diamond()};
  efg_policy* policy = nullptr;
  REQUIRE(efg_optimal_policy(h.g, &policy) == EFG_OK);
  CHECK(std::string(efg_policy_path(policy)) == "A>B>D");
  REQUIRE(efg_policy_choice_count(policy) == 3);
  CHECK(std::string(efg_policy_choice_vertex(policy, 0)) == "A");
  CHECK(std::string(efg_policy_choice_successor(policy, 0)) == "B");
  REQUIRE(efg_policy_value_count(policy) == 4);
  CHECK(efg_policy_value_energy(policy, 0) == 5.0);
  efg_policy_free(policy);

  double delta = 0.0;
  CHECK(efg_node_impact(h.g, "C", 4.0, 2.0, EFG_IMPACT_VISIT_COUNTS, &delta) == EFG_OK);
  CHECK(std::fabs(delta - 0.8) < 1e-12);
  CHECK(efg_node_impact(h.g, "C", 4.0, 2.0, EFG_IMPACT_PATH_ENUMERATION, &delta) == EFG_OK);
  CHECK(std::fabs(delta - 0.8) < 1e-12);
  CHECK(efg_node_impact(h.g, "C", 3.0, 2.0, EFG_IMPACT_VISIT_COUNTS, &delta) ==
        EFG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("cascade through the interface") {
  const double savings[] = {0.2, 0.3};
  double combined = 0.0;
  REQUIRE(efg_cascade_predict(savings, 2, &combined) == EFG_OK);
  CHECK(std::fabs(combined - 0.44) < 1e-12);
  CHECK(efg_cascade_compare(0.511, 0.460) == doctest::Approx(5.1).epsilon(1e-9));
  char* pp = nullptr;
  REQUIRE(efg_cascade_format_pp(efg_cascade_compare(0.860, 0.866), &pp) == EFG_OK);
  CHECK(take(pp) == "-0.6");

  const double bad[] = {1.5};
  CHECK(efg_cascade_predict(bad, 1, &combined) == EFG_ERR_OUT_OF_RANGE);

  efg_plans* plans = efg_plans_new();
  const char* labels[] = {"cpu", "radio"};
  double observed = 0.41;
  REQUIRE(efg_plans_add(plans, savings, 2, labels, 2, &observed) == EFG_OK);
  const double single[] = {0.5};
  REQUIRE(efg_plans_add(plans, single, 1, nullptr, 0, nullptr) == EFG_OK);

  efg_plans* ranked = nullptr;
  REQUIRE(efg_cascade_rank(plans, 10, &ranked) == EFG_OK);
  REQUIRE(efg_plans_count(ranked) == 2);
  CHECK(efg_plans_predicted(ranked, 0) == 0.5);
  CHECK(efg_plans_observed(ranked, 0, &observed) == 0);
  CHECK(efg_plans_observed(ranked, 1, &observed) == 1);
  CHECK(observed == 0.41);
  CHECK(efg_plans_label_count(ranked, 1) == 2);
  CHECK(std::string(efg_plans_label(ranked, 1, 0)) == "cpu");
  CHECK(efg_plans_savings_count(ranked, 1) == 2);
  CHECK(efg_plans_saving(ranked, 1, 1) == 0.3);
  efg_plans_free(ranked);
  efg_plans_free(plans);

  efg_plans* parsed = nullptr;
  REQUIRE(efg_plans_parse(
              "{\"schema_version\": 1, \"plans\": [{\"savings\": [0.2, 0.3]}]}",
              &parsed) == EFG_OK);
  CHECK(efg_plans_count(parsed) == 1);
  CHECK(std::fabs(efg_plans_predicted(parsed, 0) - 0.44) < 1e-12);
  efg_plans_free(parsed);
}

TEST_CASE("hierarchy operations through the interface") {
  GraphHandle h{make_diamond()};
  const char* members[] = {"B"};
  efg_graph* collapsed = nullptr;
  char* provenance = nullptr;
  REQUIRE(efg_collapse(h.g, members, 1, "M", &collapsed, &provenance) == EFG_OK);
  GraphHandle hc{collapsed};
  const std::string record = take(provenance);

  double cost = 0.0;
  CHECK(efg_graph_vertex_cost(collapsed, "M", &cost) == EFG_OK);
  CHECK(cost == 2.0);

  double before = 0.0;
  double after = 0.0;
  CHECK(efg_total_energy(h.g, &before) == EFG_OK);
  CHECK(efg_total_energy(collapsed, &after) == EFG_OK);
  CHECK(before == doctest::Approx(10.5).epsilon(1e-15));
  CHECK(std::fabs(before - after) <= 1e-12);

  efg_graph* expanded = nullptr;
  REQUIRE(efg_expand(collapsed, record.c_str(), &expanded) == EFG_OK);
  GraphHandle he{expanded};
  CHECK(efg_graph_equal(expanded, h.g) == 1);

  const char* rear[] = {"B", "C", "D"};
  efg_graph* rejected = nullptr;
  char* rejected_prov = nullptr;
  CHECK(efg_collapse(h.g, rear, 3, "M", &rejected, &rejected_prov) ==
        EFG_ERR_DUPLICATE_BOUNDARY);

  double sub = 0.0;
  CHECK(efg_subgraph_cost(h.g, rear, 3, &sub) == EFG_OK);
  CHECK(sub == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("traces and statistics through the interface") {
  const char* text =
      "u1,10.0,inst=100;cache=7,A>B\n"
      "u1,12.0,inst=140;cache=9,A>B\n"
      "u2,5.0,inst=50;cache=2,A>B\n"
      "u2,5.5,inst=70;cache=3,A>B\n";
  efg_traces* traces = nullptr;
  REQUIRE(efg_traces_parse(text, &traces) == EFG_OK);
  CHECK(efg_traces_run_count(traces) == 4);

  efg_graph* estimated = nullptr;
  efg_strings* warnings = nullptr;
  REQUIRE(efg_estimate_graph(traces, nullptr, &estimated, &warnings) == EFG_OK);
  GraphHandle he{estimated};
  CHECK(efg_graph_is_valid(estimated) == 1);
  CHECK(std::string(efg_graph_entry(estimated)) == "A");
  CHECK(efg_strings_count(warnings) > 0);
  efg_strings_free(warnings);

  efg_cv_table* table = nullptr;
  efg_strings* cv_warnings = nullptr;
  REQUIRE(efg_trace_cv(traces, &table, &cv_warnings) == EFG_OK);
  REQUIRE(efg_cv_count(table) == 2);
  CHECK(std::string(efg_cv_unit(table, 0)) == "u1");
  CHECK(efg_cv_runs(table, 0) == 2);
  CHECK(efg_cv_mean(table, 0) == 11.0);
  CHECK(efg_strings_count(cv_warnings) == 0);
  efg_strings_free(cv_warnings);

  efg_strings* flagged = nullptr;
  double fraction = 0.0;
  REQUIRE(efg_flag_path_dependent(table, 0.1, &flagged, &fraction) == EFG_OK);
  CHECK(efg_strings_count(flagged) == 1);
  CHECK(std::string(efg_strings_get(flagged, 0)) == "u1");
  CHECK(fraction == 0.5);
  efg_strings_free(flagged);
  efg_cv_free(table);

  efg_correlation* correlation = nullptr;
  REQUIRE(efg_variance_correlation(traces, "inst", "cache", &correlation) == EFG_OK);
  CHECK(efg_correlation_count(correlation) == 2);
  CHECK(std::string(efg_correlation_unit(correlation, 0)) == "u1");
  CHECK(efg_correlation_runs(correlation, 0) == 2);
  CHECK(efg_correlation_r(correlation) >= -1.0);
  CHECK(efg_correlation_r(correlation) <= 1.0);
  efg_correlation_free(correlation);

  const double series[] = {1.0, 2.0, 3.0};
  double mean = 0.0;
  double std_dev = 0.0;
  double cv = 0.0;
  REQUIRE(efg_energy_cv(series, 3, &mean, &std_dev, &cv) == EFG_OK);
  CHECK(mean == 2.0);
  CHECK(std_dev == 1.0);
  CHECK(cv == 0.5);

  CHECK(efg_traces_parse("bad line\n", &traces) == EFG_ERR_PARSE);
  efg_traces_free(traces);
}
