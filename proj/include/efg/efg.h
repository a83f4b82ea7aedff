#ifndef EFG_H
#define EFG_H

/* C interface to the energy flow graph library.
 *
 * Conventions:
 *   - Functions returning efg_status set a thread-local message readable
 *     via efg_last_error() on failure and write outputs only on EFG_OK.
 *   - char** outputs are heap strings; release them with efg_string_free.
 *   - const char* accessors return storage owned by the queried handle,
 *     valid until that handle is freed. Out-of-range indexes yield NULL
 *     (pointer accessors) or 0 (numeric accessors).
 *   - Every handle type has a matching _free function; freeing NULL is a
 *     no-op.
 *   - Paths are rendered as vertex ids joined by '>', e.g. "A>B>D".
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efg_status {
  EFG_OK = 0,
  EFG_ERR_INVALID_ARGUMENT = 1,
  EFG_ERR_PARSE = 2,
  EFG_ERR_IO = 3,
  EFG_ERR_INVALID_GRAPH = 4,
  EFG_ERR_CYCLE = 5,
  EFG_ERR_NOT_STOCHASTIC = 6,
  EFG_ERR_NO_ABSORPTION = 7,
  EFG_ERR_CONVERGENCE = 8,
  EFG_ERR_UNKNOWN_VERTEX = 9,
  EFG_ERR_INVALID_PATH = 10,
  EFG_ERR_DEAD_END = 11,
  EFG_ERR_NO_PATH = 12,
  EFG_ERR_OUT_OF_RANGE = 13,
  EFG_ERR_INVALID_SELECTION = 14,
  EFG_ERR_DUPLICATE_BOUNDARY = 15,
  EFG_ERR_TERMINAL_MEMBERSHIP = 16,
  EFG_ERR_EMPTY_TRACE_SET = 17,
  EFG_ERR_INSUFFICIENT_SAMPLES = 18,
  EFG_ERR_ZERO_MEAN = 19,
  EFG_ERR_MISSING_METRIC = 20,
  EFG_ERR_NOMEM = 21,
  EFG_ERR_UNKNOWN = 22
} efg_status;

/* Stable identifier for a status, e.g. "invalid-graph". */
const char* efg_status_name(efg_status status);

/* Message of the calling thread's most recent failure; "" after success. */
const char* efg_last_error(void);

void efg_string_free(char* s);

typedef struct efg_graph efg_graph;
typedef struct efg_builder efg_builder;
typedef struct efg_strings efg_strings;
typedef struct efg_edges efg_edges;
typedef struct efg_paths efg_paths;
typedef struct efg_expect efg_expect;
typedef struct efg_visits efg_visits;
typedef struct efg_mc efg_mc;
typedef struct efg_policy efg_policy;
typedef struct efg_plans efg_plans;
typedef struct efg_traces efg_traces;
typedef struct efg_cv_table efg_cv_table;
typedef struct efg_correlation efg_correlation;

/* ---- string lists ---- */

size_t efg_strings_count(const efg_strings* strings);
const char* efg_strings_get(const efg_strings* strings, size_t i);
void efg_strings_free(efg_strings* strings);

/* ---- graph construction ---- */

efg_builder* efg_builder_new(void);
void efg_builder_free(efg_builder* builder);
efg_status efg_builder_add_vertex(efg_builder* builder, const char* id, double cost);
efg_status efg_builder_add_edge(efg_builder* builder, const char* from, const char* to,
                                double cost);
efg_status efg_builder_add_edge_p(efg_builder* builder, const char* from, const char* to,
                                  double cost, double probability);
efg_status efg_builder_set_entry(efg_builder* builder, const char* id);
efg_status efg_builder_add_terminal(efg_builder* builder, const char* id);
/* Builds even when rule breaches exist; query them via efg_graph_validate. */
efg_status efg_builder_build(const efg_builder* builder, efg_graph** out);

void efg_graph_free(efg_graph* graph);

/* ---- graph documents (schema version 1) ---- */

efg_status efg_graph_parse(const char* json_text, efg_graph** out);
efg_status efg_graph_serialize(const efg_graph* graph, char** out);
efg_status efg_graph_export_dot(const efg_graph* graph, char** out);

/* ---- graph queries ---- */

size_t efg_graph_vertex_count(const efg_graph* graph);
size_t efg_graph_edge_count(const efg_graph* graph);
const char* efg_graph_entry(const efg_graph* graph);
int efg_graph_is_valid(const efg_graph* graph);
int efg_graph_is_stochastic(const efg_graph* graph);
int efg_graph_equal(const efg_graph* a, const efg_graph* b);
efg_status efg_graph_vertex_cost(const efg_graph* graph, const char* id, double* out);
/* Sorted vertex ids. */
efg_status efg_graph_vertices(const efg_graph* graph, efg_strings** out);
/* Sorted terminal ids. */
efg_status efg_graph_terminals(const efg_graph* graph, efg_strings** out);
/* Edges sorted by (from, to). */
efg_status efg_graph_edges(const efg_graph* graph, efg_edges** out);
size_t efg_edges_count(const efg_edges* edges);
const char* efg_edges_from(const efg_edges* edges, size_t i);
const char* efg_edges_to(const efg_edges* edges, size_t i);
double efg_edges_cost(const efg_edges* edges, size_t i);
/* Returns 1 and writes *out when edge i carries a probability. */
int efg_edges_probability(const efg_edges* edges, size_t i, double* out);
void efg_edges_free(efg_edges* edges);
/* EFG_OK with the (possibly empty) violation list. */
efg_status efg_graph_validate(const efg_graph* graph, efg_strings** violations);

/* ---- paths ---- */

efg_status efg_path_energy(const efg_graph* graph, const char* path, double* out);
efg_status efg_enumerate_paths(const efg_graph* graph, uint64_t max_paths, efg_paths** out);
size_t efg_paths_count(const efg_paths* paths);
const char* efg_paths_get(const efg_paths* paths, size_t i);
int efg_paths_truncated(const efg_paths* paths);
void efg_paths_free(efg_paths* paths);

/* ---- extremal bounds ---- */

efg_status efg_energy_bounds(const efg_graph* graph, double* bcec, double* wcec,
                             char** bcec_path, char** wcec_path);

/* ---- expected energy ---- */

typedef enum efg_method {
  EFG_METHOD_LINEAR_SOLVE = 0,
  EFG_METHOD_VALUE_ITERATION = 1
} efg_method;

#define EFG_DEFAULT_TOLERANCE 1e-9
#define EFG_DEFAULT_MAX_ITERATIONS 1000000

efg_status efg_expected_energy(const efg_graph* graph, efg_method method, double tolerance,
                               uint64_t max_iterations, efg_expect** out);
size_t efg_expect_count(const efg_expect* expect);
const char* efg_expect_vertex(const efg_expect* expect, size_t i);
double efg_expect_value(const efg_expect* expect, size_t i);
double efg_expect_residual(const efg_expect* expect);
size_t efg_expect_warning_count(const efg_expect* expect);
const char* efg_expect_warning(const efg_expect* expect, size_t i);
void efg_expect_free(efg_expect* expect);

efg_status efg_expected_visits(const efg_graph* graph, efg_visits** out);
size_t efg_visits_count(const efg_visits* visits);
const char* efg_visits_vertex(const efg_visits* visits, size_t i);
double efg_visits_value(const efg_visits* visits, size_t i);
size_t efg_visits_warning_count(const efg_visits* visits);
const char* efg_visits_warning(const efg_visits* visits, size_t i);
void efg_visits_free(efg_visits* visits);

/* ---- randomized sampling ---- */

efg_status efg_monte_carlo(const efg_graph* graph, uint64_t samples, uint64_t seed,
                           efg_mc** out);
uint64_t efg_mc_samples(const efg_mc* mc);
uint64_t efg_mc_seed(const efg_mc* mc);
double efg_mc_mean(const efg_mc* mc);
double efg_mc_std(const efg_mc* mc);
double efg_mc_min(const efg_mc* mc);
double efg_mc_max(const efg_mc* mc);
size_t efg_mc_path_count(const efg_mc* mc);
const char* efg_mc_path(const efg_mc* mc, size_t i);
uint64_t efg_mc_path_hits(const efg_mc* mc, size_t i);
void efg_mc_free(efg_mc* mc);

/* One walk, fully determined by (seed, index). */
efg_status efg_sample_run(const efg_graph* graph, uint64_t seed, uint64_t index, char** path,
                          double* energy);

/* ---- policy ---- */

efg_status efg_optimal_policy(const efg_graph* graph, efg_policy** out);
size_t efg_policy_choice_count(const efg_policy* policy);
const char* efg_policy_choice_vertex(const efg_policy* policy, size_t i);
const char* efg_policy_choice_successor(const efg_policy* policy, size_t i);
size_t efg_policy_value_count(const efg_policy* policy);
const char* efg_policy_value_vertex(const efg_policy* policy, size_t i);
double efg_policy_value_energy(const efg_policy* policy, size_t i);
const char* efg_policy_path(const efg_policy* policy);
void efg_policy_free(efg_policy* policy);

/* ---- node impact ---- */

typedef enum efg_impact_method {
  EFG_IMPACT_PATH_ENUMERATION = 0,
  EFG_IMPACT_VISIT_COUNTS = 1
} efg_impact_method;

efg_status efg_node_impact(const efg_graph* graph, const char* vertex, double old_cost,
                           double new_cost, efg_impact_method method, double* out);

/* ---- cascade model ---- */

efg_status efg_cascade_predict(const double* savings, size_t count, double* out);
/* Raw percentage-point delta, predicted minus observed. */
double efg_cascade_compare(double predicted, double observed);
/* One-decimal display form, e.g. "+5.1", "-0.6", "0.0". */
efg_status efg_cascade_format_pp(double raw_pp, char** out);

efg_plans* efg_plans_new(void);
void efg_plans_free(efg_plans* plans);
/* labels may be NULL (label_count 0) or one per saving; observed may be
 * NULL when the plan has no measurement. */
efg_status efg_plans_add(efg_plans* plans, const double* savings, size_t count,
                         const char* const* labels, size_t label_count,
                         const double* observed);
/* Parses a plans document (schema version 1). */
efg_status efg_plans_parse(const char* json_text, efg_plans** out);
efg_status efg_cascade_rank(const efg_plans* plans, size_t top_k, efg_plans** out);
size_t efg_plans_count(const efg_plans* plans);
double efg_plans_predicted(const efg_plans* plans, size_t i);
/* Returns 1 and writes *out when plan i has an observed value. */
int efg_plans_observed(const efg_plans* plans, size_t i, double* out);
size_t efg_plans_savings_count(const efg_plans* plans, size_t i);
double efg_plans_saving(const efg_plans* plans, size_t i, size_t j);
size_t efg_plans_label_count(const efg_plans* plans, size_t i);
const char* efg_plans_label(const efg_plans* plans, size_t i, size_t j);

/* ---- hierarchical composition ---- */

efg_status efg_collapse(const efg_graph* graph, const char* const* members,
                        size_t member_count, const char* macro_id, efg_graph** out,
                        char** provenance_json);
efg_status efg_expand(const efg_graph* graph, const char* provenance_json, efg_graph** out);
efg_status efg_total_energy(const efg_graph* graph, double* out);
efg_status efg_subgraph_cost(const efg_graph* graph, const char* const* members,
                             size_t member_count, double* out);

/* ---- traces ---- */

efg_status efg_traces_parse(const char* text, efg_traces** out);
size_t efg_traces_run_count(const efg_traces* traces);
void efg_traces_free(efg_traces* traces);

/* cost_json is a cost document or NULL for all-zero costs; warnings may
 * be NULL when the caller does not want them. */
efg_status efg_estimate_graph(const efg_traces* traces, const char* cost_json,
                              efg_graph** out, efg_strings** warnings);

efg_status efg_energy_cv(const double* energies, size_t count, double* mean, double* std_dev,
                         double* cv);

efg_status efg_trace_cv(const efg_traces* traces, efg_cv_table** out, efg_strings** warnings);
size_t efg_cv_count(const efg_cv_table* table);
const char* efg_cv_unit(const efg_cv_table* table, size_t i);
size_t efg_cv_runs(const efg_cv_table* table, size_t i);
double efg_cv_mean(const efg_cv_table* table, size_t i);
double efg_cv_std(const efg_cv_table* table, size_t i);
double efg_cv_value(const efg_cv_table* table, size_t i);
void efg_cv_free(efg_cv_table* table);

efg_status efg_flag_path_dependent(const efg_cv_table* table, double threshold,
                                   efg_strings** flagged, double* fraction);

efg_status efg_variance_correlation(const efg_traces* traces, const char* metric_a,
                                    const char* metric_b, efg_correlation** out);
size_t efg_correlation_count(const efg_correlation* correlation);
const char* efg_correlation_unit(const efg_correlation* correlation, size_t i);
size_t efg_correlation_runs(const efg_correlation* correlation, size_t i);
double efg_correlation_std_a(const efg_correlation* correlation, size_t i);
double efg_correlation_std_b(const efg_correlation* correlation, size_t i);
double efg_correlation_r(const efg_correlation* correlation);
void efg_correlation_free(efg_correlation* correlation);

#ifdef __cplusplus
}
#endif

#endif /* EFG_H */
