// Command-line front end; talks to the library through the C API only.
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "efg/efg.h"

namespace {

// ---- small utilities ----------------------------------------------------

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return false;
  }
  out << content;
  return static_cast<bool>(out);
}

// ---- RAII wrappers over C handles ---------------------------------------

using GraphPtr = std::unique_ptr<efg_graph, decltype(&efg_graph_free)>;
using StringsPtr = std::unique_ptr<efg_strings, decltype(&efg_strings_free)>;
using EdgesPtr = std::unique_ptr<efg_edges, decltype(&efg_edges_free)>;
using ExpectPtr = std::unique_ptr<efg_expect, decltype(&efg_expect_free)>;
using PolicyPtr = std::unique_ptr<efg_policy, decltype(&efg_policy_free)>;
using McPtr = std::unique_ptr<efg_mc, decltype(&efg_mc_free)>;
using PlansPtr = std::unique_ptr<efg_plans, decltype(&efg_plans_free)>;
using TracesPtr = std::unique_ptr<efg_traces, decltype(&efg_traces_free)>;
using CvPtr = std::unique_ptr<efg_cv_table, decltype(&efg_cv_free)>;
using CorrPtr = std::unique_ptr<efg_correlation, decltype(&efg_correlation_free)>;

std::string take_string(char* s) {
  std::string out = s == nullptr ? "" : s;
  efg_string_free(s);
  return out;
}

// ---- report emission -----------------------------------------------------

// Table mode prints plain lines; csv mode prints data rows with proper
// quoting and turns metadata into '#' comments.
struct Printer {
  bool csv = false;

  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
      return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') {
        quoted += '"';
      }
      quoted += c;
    }
    return quoted + "\"";
  }

  void meta(const std::string& key, const std::string& value) const {
    if (csv) {
      std::cout << "# " << key << ": " << value << "\n";
    } else {
      std::cout << key << ": " << value << "\n";
    }
  }

  void row(const std::vector<std::string>& cells) const {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) {
        line += csv ? "," : "  ";
      }
      line += csv ? csv_field(cells[i]) : cells[i];
    }
    std::cout << line << "\n";
  }

  void warning(const std::string& message) const {
    if (csv) {
      std::cout << "# warning: " << message << "\n";
    } else {
      std::cout << "warning: " << message << "\n";
    }
  }
};

// ---- error handling -------------------------------------------------------

int exit_code_for(efg_status status) {
  return status == EFG_ERR_PARSE || status == EFG_ERR_IO ? 2 : 1;
}

// On failure prints the library error and stores the exit code; the
// calling command returns immediately.
bool check(efg_status status, int& rc) {
  if (status == EFG_OK) {
    return true;
  }
  std::cerr << "error: " << efg_last_error() << " [" << efg_status_name(status) << "]\n";
  rc = exit_code_for(status);
  return false;
}

int fail_io(const std::string& path) {
  std::cerr << "error: cannot read file '" << path << "'\n";
  return 2;
}

bool load_graph(const std::string& path, const Printer& printer, const std::string& command,
                GraphPtr& graph, int& rc) {
  std::string text;
  if (!read_file(path, text)) {
    rc = fail_io(path);
    return false;
  }
  efg_graph* raw = nullptr;
  if (!check(efg_graph_parse(text.c_str(), &raw), rc)) {
    return false;
  }
  graph = GraphPtr(raw, efg_graph_free);
  printer.meta("command", command);
  printer.meta("input", path + " fnv1a=" + fnv1a_hex(text));
  return true;
}

bool load_traces(const std::string& path, const Printer& printer, const std::string& command,
                 TracesPtr& traces, int& rc) {
  std::string text;
  if (!read_file(path, text)) {
    rc = fail_io(path);
    return false;
  }
  efg_traces* raw = nullptr;
  if (!check(efg_traces_parse(text.c_str(), &raw), rc)) {
    return false;
  }
  traces = TracesPtr(raw, efg_traces_free);
  printer.meta("command", command);
  printer.meta("input", path + " fnv1a=" + fnv1a_hex(text));
  return true;
}

void print_warnings(const Printer& printer, const efg_strings* warnings) {
  for (std::size_t i = 0; i < efg_strings_count(warnings); ++i) {
    printer.warning(efg_strings_get(warnings, i));
  }
}

// ---- commands --------------------------------------------------------------

int cmd_validate(const std::string& file, const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "validate", graph, rc)) {
    return rc;
  }
  efg_strings* violations = nullptr;
  if (!check(efg_graph_validate(graph.get(), &violations), rc)) {
    return rc;
  }
  StringsPtr guard(violations, efg_strings_free);
  if (efg_strings_count(violations) == 0) {
    printer.row({"valid"});
    return 0;
  }
  for (std::size_t i = 0; i < efg_strings_count(violations); ++i) {
    printer.row({"violation", efg_strings_get(violations, i)});
  }
  return 1;
}

int cmd_bounds(const std::string& file, const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "bounds", graph, rc)) {
    return rc;
  }
  double bcec = 0.0;
  double wcec = 0.0;
  char* bcec_path = nullptr;
  char* wcec_path = nullptr;
  if (!check(efg_energy_bounds(graph.get(), &bcec, &wcec, &bcec_path, &wcec_path), rc)) {
    return rc;
  }
  if (printer.csv) {
    printer.row({"bound", "energy_j", "path"});
  }
  printer.row({printer.csv ? "bcec" : "BCEC", format_double(bcec) + (printer.csv ? "" : " J"),
               printer.csv ? take_string(bcec_path) : "via " + take_string(bcec_path)});
  printer.row({printer.csv ? "wcec" : "WCEC", format_double(wcec) + (printer.csv ? "" : " J"),
               printer.csv ? take_string(wcec_path) : "via " + take_string(wcec_path)});
  return 0;
}

int cmd_expect(const std::string& file, const std::string& method, double tolerance,
               std::uint64_t max_iterations, const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "expect", graph, rc)) {
    return rc;
  }
  const efg_method m =
      method == "iterate" ? EFG_METHOD_VALUE_ITERATION : EFG_METHOD_LINEAR_SOLVE;
  efg_expect* raw = nullptr;
  if (!check(efg_expected_energy(graph.get(), m, tolerance, max_iterations, &raw), rc)) {
    return rc;
  }
  ExpectPtr expect(raw, efg_expect_free);
  printer.meta("method", method == "iterate" ? "value-iteration" : "linear-solve");
  printer.meta("residual", format_double(efg_expect_residual(expect.get())));
  if (printer.csv) {
    printer.row({"vertex", "expected_energy_j"});
  }
  for (std::size_t i = 0; i < efg_expect_count(expect.get()); ++i) {
    printer.row({efg_expect_vertex(expect.get(), i),
                 format_double(efg_expect_value(expect.get(), i)) + (printer.csv ? "" : " J")});
  }
  for (std::size_t i = 0; i < efg_expect_warning_count(expect.get()); ++i) {
    printer.warning(efg_expect_warning(expect.get(), i));
  }
  return 0;
}

int cmd_optimize(const std::string& file, const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "optimize", graph, rc)) {
    return rc;
  }
  efg_policy* raw = nullptr;
  if (!check(efg_optimal_policy(graph.get(), &raw), rc)) {
    return rc;
  }
  PolicyPtr policy(raw, efg_policy_free);
  printer.meta("path", efg_policy_path(policy.get()));
  if (printer.csv) {
    printer.row({"kind", "vertex", "value"});
  }
  for (std::size_t i = 0; i < efg_policy_choice_count(policy.get()); ++i) {
    const std::string vertex = efg_policy_choice_vertex(policy.get(), i);
    const std::string successor = efg_policy_choice_successor(policy.get(), i);
    if (printer.csv) {
      printer.row({"choice", vertex, successor});
    } else {
      printer.row({"policy", vertex + " -> " + successor});
    }
  }
  for (std::size_t i = 0; i < efg_policy_value_count(policy.get()); ++i) {
    const std::string vertex = efg_policy_value_vertex(policy.get(), i);
    const std::string energy = format_double(efg_policy_value_energy(policy.get(), i));
    if (printer.csv) {
      printer.row({"energy", vertex, energy});
    } else {
      printer.row({"E_opt[" + vertex + "]", energy + " J"});
    }
  }
  return 0;
}

int cmd_impact(const std::string& file, const std::string& vertex, double new_cost,
               bool have_old, double old_cost, const std::string& method,
               const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "impact", graph, rc)) {
    return rc;
  }
  if (!have_old && !check(efg_graph_vertex_cost(graph.get(), vertex.c_str(), &old_cost), rc)) {
    return rc;
  }
  const efg_impact_method m =
      method == "paths" ? EFG_IMPACT_PATH_ENUMERATION : EFG_IMPACT_VISIT_COUNTS;
  double delta = 0.0;
  if (!check(efg_node_impact(graph.get(), vertex.c_str(), old_cost, new_cost, m, &delta),
             rc)) {
    return rc;
  }
  printer.meta("method", method == "paths" ? "path-enumeration" : "visit-counts");
  if (printer.csv) {
    printer.row({"vertex", "old_cost_j", "new_cost_j", "delta_j"});
    printer.row({vertex, format_double(old_cost), format_double(new_cost),
                 format_double(delta)});
  } else {
    printer.row({"vertex", vertex});
    printer.row({"old_cost", format_double(old_cost) + " J"});
    printer.row({"new_cost", format_double(new_cost) + " J"});
    printer.row({"delta", format_double(delta) + " J"});
  }
  return 0;
}

int cmd_cascade_savings(const std::vector<double>& savings, bool have_observed,
                        double observed, const Printer& printer) {
  int rc = 0;
  double predicted = 0.0;
  if (!check(efg_cascade_predict(savings.data(), savings.size(), &predicted), rc)) {
    return rc;
  }
  printer.meta("command", "cascade");
  std::string joined;
  for (double s : savings) {
    joined += (joined.empty() ? "" : ", ") + format_double(s);
  }
  printer.meta("savings", joined);
  if (printer.csv) {
    printer.row({"predicted", "observed", "delta_pp"});
    if (have_observed) {
      const double delta = efg_cascade_compare(predicted, observed);
      printer.row({format_double(predicted), format_double(observed), format_double(delta)});
    } else {
      printer.row({format_double(predicted), "", ""});
    }
    return 0;
  }
  printer.row({"predicted", format_percent(predicted)});
  if (have_observed) {
    const double delta = efg_cascade_compare(predicted, observed);
    char* display = nullptr;
    if (!check(efg_cascade_format_pp(delta, &display), rc)) {
      return rc;
    }
    printer.row({"observed", format_percent(observed)});
    printer.row({"delta", take_string(display) + " pp"});
  }
  return 0;
}

int cmd_cascade_plans(const std::string& file, std::size_t top_k, const Printer& printer) {
  int rc = 0;
  std::string text;
  if (!read_file(file, text)) {
    return fail_io(file);
  }
  efg_plans* parsed_raw = nullptr;
  if (!check(efg_plans_parse(text.c_str(), &parsed_raw), rc)) {
    return rc;
  }
  PlansPtr parsed(parsed_raw, efg_plans_free);
  efg_plans* ranked_raw = nullptr;
  if (!check(efg_cascade_rank(parsed.get(), top_k, &ranked_raw), rc)) {
    return rc;
  }
  PlansPtr ranked(ranked_raw, efg_plans_free);
  printer.meta("command", "cascade");
  printer.meta("input", file + " fnv1a=" + fnv1a_hex(text));
  if (printer.csv) {
    printer.row({"rank", "labels", "predicted", "observed", "delta_pp"});
  }
  for (std::size_t i = 0; i < efg_plans_count(ranked.get()); ++i) {
    std::string labels;
    for (std::size_t j = 0; j < efg_plans_label_count(ranked.get(), i); ++j) {
      labels += (labels.empty() ? "" : "+") + std::string(efg_plans_label(ranked.get(), i, j));
    }
    if (labels.empty()) {
      labels = "plan-" + std::to_string(i + 1);
    }
    const double predicted = efg_plans_predicted(ranked.get(), i);
    double observed = 0.0;
    const bool have_observed = efg_plans_observed(ranked.get(), i, &observed) == 1;
    if (printer.csv) {
      std::string delta;
      if (have_observed) {
        delta = format_double(efg_cascade_compare(predicted, observed));
      }
      printer.row({std::to_string(i + 1), labels, format_double(predicted),
                   have_observed ? format_double(observed) : "", delta});
    } else {
      std::vector<std::string> cells{std::to_string(i + 1), labels,
                                     format_percent(predicted)};
      if (have_observed) {
        char* display = nullptr;
        if (!check(efg_cascade_format_pp(efg_cascade_compare(predicted, observed), &display),
                   rc)) {
          return rc;
        }
        cells.push_back(format_percent(observed));
        cells.push_back(take_string(display) + " pp");
      }
      printer.row(cells);
    }
  }
  return 0;
}

int cmd_collapse(const std::string& file, const std::vector<std::string>& members,
                 const std::string& macro_id, const std::string& out_file,
                 const std::string& provenance_file, const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "collapse", graph, rc)) {
    return rc;
  }
  std::vector<const char*> member_ptrs;
  member_ptrs.reserve(members.size());
  for (const std::string& m : members) {
    member_ptrs.push_back(m.c_str());
  }
  efg_graph* collapsed_raw = nullptr;
  char* provenance = nullptr;
  if (!check(efg_collapse(graph.get(), member_ptrs.data(), member_ptrs.size(),
                          macro_id.c_str(), &collapsed_raw, &provenance),
             rc)) {
    return rc;
  }
  GraphPtr collapsed(collapsed_raw, efg_graph_free);
  const std::string provenance_json = take_string(provenance);

  double before = 0.0;
  double after = 0.0;
  double macro_cost = 0.0;
  if (!check(efg_total_energy(graph.get(), &before), rc) ||
      !check(efg_total_energy(collapsed.get(), &after), rc) ||
      !check(efg_graph_vertex_cost(collapsed.get(), macro_id.c_str(), &macro_cost), rc)) {
    return rc;
  }
  char* serialized = nullptr;
  if (!check(efg_graph_serialize(collapsed.get(), &serialized), rc)) {
    return rc;
  }
  if (!write_file(out_file, take_string(serialized))) {
    std::cerr << "error: cannot write file '" << out_file << "'\n";
    return 2;
  }
  if (!provenance_file.empty() && !write_file(provenance_file, provenance_json)) {
    std::cerr << "error: cannot write file '" << provenance_file << "'\n";
    return 2;
  }

  const bool conserved = std::abs(before - after) <= 1e-12 * std::max(1.0, std::abs(before));
  printer.row({"macro_cost", format_double(macro_cost) + (printer.csv ? "" : " J")});
  printer.row({"total_before", format_double(before) + (printer.csv ? "" : " J")});
  printer.row({"total_after", format_double(after) + (printer.csv ? "" : " J")});
  printer.row({"conserved", conserved ? "yes" : "no"});
  printer.meta("wrote", out_file);
  if (!provenance_file.empty()) {
    printer.meta("wrote", provenance_file);
  }
  return 0;
}

int cmd_ingest(const std::string& file, const std::string& costs_file,
               const std::string& out_file, double threshold, const Printer& printer) {
  int rc = 0;
  TracesPtr traces(nullptr, efg_traces_free);
  if (!load_traces(file, printer, "ingest", traces, rc)) {
    return rc;
  }
  std::string cost_text;
  const char* cost_json = nullptr;
  if (!costs_file.empty()) {
    if (!read_file(costs_file, cost_text)) {
      return fail_io(costs_file);
    }
    cost_json = cost_text.c_str();
  }
  efg_graph* estimated_raw = nullptr;
  efg_strings* warnings_raw = nullptr;
  if (!check(efg_estimate_graph(traces.get(), cost_json, &estimated_raw, &warnings_raw), rc)) {
    return rc;
  }
  GraphPtr estimated(estimated_raw, efg_graph_free);
  StringsPtr est_warnings(warnings_raw, efg_strings_free);

  printer.meta("runs", std::to_string(efg_traces_run_count(traces.get())));
  printer.meta("entry", efg_graph_entry(estimated.get()));

  efg_edges* edges_raw = nullptr;
  if (!check(efg_graph_edges(estimated.get(), &edges_raw), rc)) {
    return rc;
  }
  EdgesPtr edges(edges_raw, efg_edges_free);
  if (printer.csv) {
    printer.row({"kind", "a", "b", "c", "d"});
  }
  for (std::size_t i = 0; i < efg_edges_count(edges.get()); ++i) {
    const std::string from = efg_edges_from(edges.get(), i);
    const std::string to = efg_edges_to(edges.get(), i);
    double probability = 0.0;
    efg_edges_probability(edges.get(), i, &probability);
    const std::string cost = format_double(efg_edges_cost(edges.get(), i));
    if (printer.csv) {
      printer.row({"edge", from, to, format_double(probability), cost});
    } else {
      printer.row({"edge", from + " -> " + to, "p=" + format_double(probability),
                   "cost=" + cost});
    }
  }

  efg_cv_table* cv_raw = nullptr;
  efg_strings* cv_warnings_raw = nullptr;
  if (!check(efg_trace_cv(traces.get(), &cv_raw, &cv_warnings_raw), rc)) {
    return rc;
  }
  CvPtr cv(cv_raw, efg_cv_free);
  StringsPtr cv_warnings(cv_warnings_raw, efg_strings_free);
  for (std::size_t i = 0; i < efg_cv_count(cv.get()); ++i) {
    const std::string unit = efg_cv_unit(cv.get(), i);
    if (printer.csv) {
      printer.row({"cv", unit, format_double(efg_cv_mean(cv.get(), i)),
                   format_double(efg_cv_std(cv.get(), i)),
                   format_double(efg_cv_value(cv.get(), i))});
    } else {
      printer.row({"cv", unit, "mean=" + format_double(efg_cv_mean(cv.get(), i)),
                   "std=" + format_double(efg_cv_std(cv.get(), i)),
                   "cv=" + format_double(efg_cv_value(cv.get(), i))});
    }
  }

  efg_strings* flagged_raw = nullptr;
  double fraction = 0.0;
  if (!check(efg_flag_path_dependent(cv.get(), threshold, &flagged_raw, &fraction), rc)) {
    return rc;
  }
  StringsPtr flagged(flagged_raw, efg_strings_free);
  std::string flagged_list;
  for (std::size_t i = 0; i < efg_strings_count(flagged.get()); ++i) {
    flagged_list += (flagged_list.empty() ? "" : ", ") +
                    std::string(efg_strings_get(flagged.get(), i));
  }
  if (printer.csv) {
    printer.row({"flagged", flagged_list, format_double(fraction), "", ""});
  } else {
    printer.row({"flagged", flagged_list.empty() ? "none" : flagged_list,
                 "fraction=" + format_double(fraction)});
  }

  if (!out_file.empty()) {
    char* serialized = nullptr;
    if (!check(efg_graph_serialize(estimated.get(), &serialized), rc)) {
      return rc;
    }
    if (!write_file(out_file, take_string(serialized))) {
      std::cerr << "error: cannot write file '" << out_file << "'\n";
      return 2;
    }
    printer.meta("wrote", out_file);
  }
  print_warnings(printer, est_warnings.get());
  print_warnings(printer, cv_warnings.get());
  return 0;
}

int cmd_correlate(const std::string& file, const std::string& metric_a,
                  const std::string& metric_b, const Printer& printer) {
  int rc = 0;
  TracesPtr traces(nullptr, efg_traces_free);
  if (!load_traces(file, printer, "correlate", traces, rc)) {
    return rc;
  }
  efg_correlation* raw = nullptr;
  if (!check(efg_variance_correlation(traces.get(), metric_a.c_str(), metric_b.c_str(), &raw),
             rc)) {
    return rc;
  }
  CorrPtr correlation(raw, efg_correlation_free);
  printer.meta("metric_a", metric_a);
  printer.meta("metric_b", metric_b);
  if (printer.csv) {
    printer.row({"unit", "runs", "std_a", "std_b"});
  }
  for (std::size_t i = 0; i < efg_correlation_count(correlation.get()); ++i) {
    printer.row({efg_correlation_unit(correlation.get(), i),
                 std::to_string(efg_correlation_runs(correlation.get(), i)),
                 format_double(efg_correlation_std_a(correlation.get(), i)),
                 format_double(efg_correlation_std_b(correlation.get(), i))});
  }
  if (printer.csv) {
    printer.row({"pearson_r", format_double(efg_correlation_r(correlation.get())), "", ""});
  } else {
    printer.row({"pearson_r", format_double(efg_correlation_r(correlation.get()))});
  }
  return 0;
}

int cmd_export_dot(const std::string& file, const std::string& out_file) {
  int rc = 0;
  std::string text;
  if (!read_file(file, text)) {
    return fail_io(file);
  }
  efg_graph* raw = nullptr;
  if (!check(efg_graph_parse(text.c_str(), &raw), rc)) {
    return rc;
  }
  GraphPtr graph(raw, efg_graph_free);
  char* dot = nullptr;
  if (!check(efg_graph_export_dot(graph.get(), &dot), rc)) {
    return rc;
  }
  const std::string rendered = take_string(dot);
  if (out_file.empty()) {
    std::cout << rendered;
    return 0;
  }
  if (!write_file(out_file, rendered)) {
    std::cerr << "error: cannot write file '" << out_file << "'\n";
    return 2;
  }
  return 0;
}

int cmd_simulate(const std::string& file, std::uint64_t samples, std::uint64_t seed,
                 const Printer& printer) {
  int rc = 0;
  GraphPtr graph(nullptr, efg_graph_free);
  if (!load_graph(file, printer, "simulate", graph, rc)) {
    return rc;
  }
  efg_mc* raw = nullptr;
  if (!check(efg_monte_carlo(graph.get(), samples, seed, &raw), rc)) {
    return rc;
  }
  McPtr mc(raw, efg_mc_free);
  printer.meta("seed", std::to_string(efg_mc_seed(mc.get())));
  printer.meta("samples", std::to_string(efg_mc_samples(mc.get())));
  const std::string unit = printer.csv ? "" : " J";
  printer.row({"mean", format_double(efg_mc_mean(mc.get())) + unit});
  printer.row({"std", format_double(efg_mc_std(mc.get())) + unit});
  printer.row({"min", format_double(efg_mc_min(mc.get())) + unit});
  printer.row({"max", format_double(efg_mc_max(mc.get())) + unit});
  if (printer.csv) {
    printer.row({"path", "count", "frequency"});
  }
  const double total = static_cast<double>(efg_mc_samples(mc.get()));
  for (std::size_t i = 0; i < efg_mc_path_count(mc.get()); ++i) {
    const double freq = static_cast<double>(efg_mc_path_hits(mc.get(), i)) / total;
    printer.row({efg_mc_path(mc.get(), i),
                 std::to_string(efg_mc_path_hits(mc.get(), i)),
                 printer.csv ? format_double(freq) : format_percent(freq)});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy flow graph analyzer"};
  app.require_subcommand(1);

  std::string format = "table";
  const auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
  };

  std::string graph_file;
  std::string trace_file;

  auto* validate = app.add_subcommand("validate", "check a graph document");
  validate->add_option("graph", graph_file, "graph document")->required();
  add_format(validate);

  auto* bounds = app.add_subcommand("bounds", "extremal path energies");
  bounds->add_option("graph", graph_file, "graph document")->required();
  add_format(bounds);

  std::string method = "linear";
  double tolerance = 1e-9;
  std::uint64_t max_iterations = 1000000;
  auto* expect = app.add_subcommand("expect", "expected energy per vertex");
  expect->add_option("graph", graph_file, "graph document")->required();
  expect->add_option("--method", method, "solver")
      ->check(CLI::IsMember({"linear", "iterate"}))
      ->capture_default_str();
  expect->add_option("--tolerance", tolerance, "residual tolerance")->capture_default_str();
  expect->add_option("--max-iterations", max_iterations, "iteration cap")
      ->capture_default_str();
  add_format(expect);

  auto* optimize = app.add_subcommand("optimize", "minimum-energy policy");
  optimize->add_option("graph", graph_file, "graph document")->required();
  add_format(optimize);

  std::string vertex;
  double new_cost = 0.0;
  double old_cost = 0.0;
  std::string impact_method = "visits";
  auto* impact = app.add_subcommand("impact", "global effect of one vertex change");
  impact->add_option("graph", graph_file, "graph document")->required();
  impact->add_option("--vertex", vertex, "vertex to change")->required();
  impact->add_option("--new-cost", new_cost, "replacement state cost")->required();
  auto* old_cost_opt = impact->add_option("--old-cost", old_cost,
                                          "current state cost (checked against the graph)");
  impact->add_option("--method", impact_method, "estimator")
      ->check(CLI::IsMember({"paths", "visits"}))
      ->capture_default_str();
  add_format(impact);

  std::vector<double> savings;
  double observed = 0.0;
  std::string plans_file;
  std::size_t top_k = 0;
  auto* cascade = app.add_subcommand("cascade", "combined-savings model");
  cascade->add_option("--savings", savings, "fractional savings")->delimiter(',');
  auto* observed_opt = cascade->add_option("--observed", observed, "measured combined saving");
  cascade->add_option("--plans", plans_file, "plans document to rank");
  cascade->add_option("--top", top_k, "keep this many ranked plans");
  add_format(cascade);

  std::vector<std::string> members;
  std::string macro_id;
  std::string out_file;
  std::string provenance_file;
  auto* collapse = app.add_subcommand("collapse", "fold a sub-graph into a macro vertex");
  collapse->add_option("graph", graph_file, "graph document")->required();
  collapse->add_option("--members", members, "member vertices")->delimiter(',')->required();
  collapse->add_option("--macro-id", macro_id, "replacement vertex id")->required();
  collapse->add_option("--out", out_file, "collapsed graph document")->required();
  collapse->add_option("--provenance", provenance_file, "provenance record file");
  add_format(collapse);

  std::string costs_file;
  double threshold = 0.1;
  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "estimate a graph from traces");
  ingest->add_option("traces", trace_file, "trace file")->required();
  ingest->add_option("--costs", costs_file, "cost document");
  ingest->add_option("--out", ingest_out, "estimated graph document");
  ingest->add_option("--threshold", threshold, "cv flagging threshold")
      ->capture_default_str();
  add_format(ingest);

  std::string metric_a;
  std::string metric_b;
  auto* correlate = app.add_subcommand("correlate", "cross-unit variance correlation");
  correlate->add_option("traces", trace_file, "trace file")->required();
  correlate->add_option("--metric-a", metric_a, "first metric")->required();
  correlate->add_option("--metric-b", metric_b, "second metric")->required();
  add_format(correlate);

  std::string dot_out;
  auto* export_dot = app.add_subcommand("export-dot", "graph-visualization text");
  export_dot->add_option("graph", graph_file, "graph document")->required();
  export_dot->add_option("--out", dot_out, "write here instead of stdout");

  std::uint64_t samples = 10000;
  std::uint64_t seed = 42;
  auto* simulate = app.add_subcommand("simulate", "randomized walk statistics");
  simulate->add_option("graph", graph_file, "graph document")->required();
  simulate->add_option("--samples", samples, "walk count")->capture_default_str();
  simulate->add_option("--seed", seed, "random seed")->capture_default_str();
  add_format(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  Printer printer{format == "csv"};
  if (app.got_subcommand(validate)) {
    return cmd_validate(graph_file, printer);
  }
  if (app.got_subcommand(bounds)) {
    return cmd_bounds(graph_file, printer);
  }
  if (app.got_subcommand(expect)) {
    return cmd_expect(graph_file, method, tolerance, max_iterations, printer);
  }
  if (app.got_subcommand(optimize)) {
    return cmd_optimize(graph_file, printer);
  }
  if (app.got_subcommand(impact)) {
    return cmd_impact(graph_file, vertex, new_cost, old_cost_opt->count() > 0, old_cost,
                      impact_method, printer);
  }
  if (app.got_subcommand(cascade)) {
    if (!plans_file.empty()) {
      return cmd_cascade_plans(plans_file, top_k == 0 ? SIZE_MAX : top_k, printer);
    }
    if (savings.empty()) {
      std::cerr << "error: provide --savings or --plans\n";
      return 2;
    }
    return cmd_cascade_savings(savings, observed_opt->count() > 0, observed, printer);
  }
  if (app.got_subcommand(collapse)) {
    return cmd_collapse(graph_file, members, macro_id, out_file, provenance_file, printer);
  }
  if (app.got_subcommand(ingest)) {
    return cmd_ingest(trace_file, costs_file, ingest_out, threshold, printer);
  }
  if (app.got_subcommand(correlate)) {
    return cmd_correlate(trace_file, metric_a, metric_b, printer);
  }
  if (app.got_subcommand(export_dot)) {
    return cmd_export_dot(graph_file, dot_out);
  }
  if (app.got_subcommand(simulate)) {
    return cmd_simulate(graph_file, samples, seed, printer);
  }
  return 2;
}
