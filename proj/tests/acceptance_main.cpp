// Acceptance gate: one PASS/FAIL line per top-level guarantee, nonzero
// exit if anything fails. Each check builds its own seeded corpus so a
// failure replays exactly.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

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

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/testgraphs.hpp"

namespace {

using namespace efg;
using namespace testsupport;

using Failure = std::optional<std::string>;

std::string describe(std::uint64_t seed, const std::string& what) {
  return "seed " + std::to_string(seed) + ": " + what;
}

bool close_rel(double a, double b, double tol) {
  if (a == b) {
    return true;
  }
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

// Expected energy at the entry against the probability-weighted sum over
// every enumerated path, on 200 seeded graphs, under a time budget.
Failure check_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 5000; seed < 5200; ++seed) {
    const Graph g = random_dag(seed);
    const double analytic = expected_energy(g).per_vertex.at(g.entry());
    double weighted = 0.0;
    for (const OraclePath& path : oracle_enumerate(g)) {
      weighted += path.probability * oracle_path_energy(g, path.vertices);
    }
    if (!close_rel(analytic, weighted, 1e-9)) {
      return describe(seed, "expected energy " + std::to_string(analytic) +
                                " vs path-weighted " + std::to_string(weighted));
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  const double seconds = std::chrono::duration<double>(elapsed).count();
  if (seconds >= 10.0) {
    return "corpus took " + std::to_string(seconds) + " s, budget is 10 s";
  }
  return std::nullopt;
}

// Reported bounds equal the exact extremes of the enumerated path
// energies, and the witness paths re-evaluate to the reported values.
Failure check_bounds_exactness() {
  for (std::uint64_t seed = 5000; seed < 5200; ++seed) {
    const Graph g = random_dag(seed);
    const EnergyBounds bounds = energy_bounds(g);

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const OraclePath& path : oracle_enumerate(g)) {
      const double energy = path_energy(g, path.vertices);
      lo = std::min(lo, energy);
      hi = std::max(hi, energy);
    }
    if (bounds.bcec != lo || bounds.wcec != hi) {
      return describe(seed, "bounds mismatch against enumerated extremes");
    }
    if (path_energy(g, bounds.bcec_path) != bounds.bcec ||
        path_energy(g, bounds.wcec_path) != bounds.wcec) {
      return describe(seed, "witness paths do not re-evaluate to the bounds");
    }
  }
  return std::nullopt;
}

// Optimal-policy energy equals the exhaustive minimum over deterministic
// successor assignments, and repeated runs make identical choices.
Failure check_policy_optimality() {
  for (std::uint64_t seed = 5200; seed < 5300; ++seed) {
    const Graph g = random_dag(seed, 5, 10);
    const OptimalPolicy policy = optimal_policy(g);
    const double exhaustive = oracle_policy_minimum(g);
    if (policy.optimal_energy.at(g.entry()) != exhaustive) {
      return describe(seed, "policy energy differs from the exhaustive minimum");
    }
    for (int repeat = 0; repeat < 2; ++repeat) {
      const OptimalPolicy again = optimal_policy(g);
      if (again.per_vertex != policy.per_vertex || again.induced_path != policy.induced_path) {
        return describe(seed, "policy choices changed between runs");
      }
    }
  }
  return std::nullopt;
}

// Both impact methods and the before/after expected-energy difference
// agree pairwise for a cost change at a well-visited vertex.
Failure check_node_impact_consistency() {
  for (std::uint64_t seed = 5300; seed < 5400; ++seed) {
    const Graph g = random_dag(seed);
    const VisitCountReport visits = expected_visits(g);

    VertexId vertex;
    double weight = -1.0;
    for (const auto& [id, count] : visits.per_vertex) {
      const double contribution = count * g.vertex_costs().at(id);
      if (contribution > weight) {
        weight = contribution;
        vertex = id;
      }
    }
    const double old_cost = g.vertex_costs().at(vertex);
    const double new_cost = seed % 2 == 0 ? 0.0 : old_cost / 2.0;
    const NodeOptimization change{vertex, old_cost, new_cost};

    const double by_paths = node_impact(g, change, ImpactMethod::path_enumeration);
    const double by_visits = node_impact(g, change, ImpactMethod::visit_counts);
    const double before = expected_energy(g).per_vertex.at(g.entry());
    const double after =
        expected_energy(g.with_vertex_cost(vertex, new_cost)).per_vertex.at(g.entry());
    const double by_difference = before - after;

    if (!close_rel(by_paths, by_visits, 1e-9) || !close_rel(by_paths, by_difference, 1e-9) ||
        !close_rel(by_visits, by_difference, 1e-9)) {
      return describe(seed, "impact methods disagree at " + vertex);
    }
  }
  return std::nullopt;
}

// The published validation rows, then the model properties on 1000
// random savings vectors.
Failure check_cascade_reproduction() {
  const struct {
    double predicted;
    double observed;
    const char* delta;
  } rows[] = {
      {0.860, 0.866, "-0.6"},
      {0.749, 0.737, "+1.2"},
      {0.832, 0.808, "+2.4"},
      {0.511, 0.460, "+5.1"},
  };
  for (const auto& row : rows) {
    const std::string got = format_pp(cascade_compare(row.predicted, row.observed));
    if (got != row.delta) {
      return std::string("delta row: expected ") + row.delta + ", got " + got;
    }
  }

  for (std::uint64_t seed = 5500; seed < 6500; ++seed) {
    const std::vector<double> savings = random_savings(seed);
    const double combined = cascade_predict(savings).predicted_combined;

    std::vector<double> shuffled = savings;
    Rng rng(seed ^ 0x5ca1ab1eULL);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[static_cast<std::size_t>(rng.range(0, i - 1))]);
    }
    const double permuted = cascade_predict(shuffled).predicted_combined;
    if (std::fabs(permuted - combined) > 1e-12) {
      return describe(seed, "permutation changed the prediction");
    }

    const double best = *std::max_element(savings.begin(), savings.end());
    if (!(combined >= best) || !(combined < 1.0)) {
      return describe(seed, "prediction escaped [max saving, 1)");
    }

    std::vector<double> extended = savings;
    extended.push_back(rng.unit() * 0.95);
    if (cascade_predict(extended).predicted_combined < combined) {
      return describe(seed, "an extra saving lowered the prediction");
    }
  }
  return std::nullopt;
}

// Collapses conserve total graph energy, and singleton collapses invert
// exactly; runs until 100 random selections have actually collapsed.
Failure check_hierarchical_conservation() {
  // Structural rejections (merged boundary edges, terminal mixing,
  // bad selections) are retried with the next seed rather than counted.
  std::size_t performed = 0;
  for (std::uint64_t seed = 5700; performed < 100 && seed < 8700; ++seed) {
    const Graph g = random_dag(seed);
    const std::set<VertexId> members = random_members(seed ^ 0xbeefULL, g);
    std::optional<CollapseResult> result;
    try {
      result = collapse(g, SubgraphSelection{members, "MACRO"});
    } catch (const Error& e) {
      if (e.code() == Errc::duplicate_boundary || e.code() == Errc::terminal_membership ||
          e.code() == Errc::invalid_selection) {
        continue;
      }
      return describe(seed, std::string("unexpected collapse error: ") + e.what());
    }
    ++performed;

    const double before = total_graph_energy(g);
    const double after = total_graph_energy(result->graph);
    if (std::fabs(before - after) > 1e-12 * std::max(1.0, std::fabs(before))) {
      return describe(seed, "total energy not conserved");
    }
    const double macro_direct = subgraph_cost(g, members);
    if (result->graph.vertex_costs().at("MACRO") != macro_direct) {
      return describe(seed, "macro cost differs from the direct sum");
    }

    std::vector<VertexId> singles;
    for (const auto& [id, cost] : g.vertex_costs()) {
      if (id != g.entry()) {
        singles.push_back(id);
      }
    }
    Rng rng(seed ^ 0xfacadeULL);
    const VertexId single = singles[static_cast<std::size_t>(rng.range(0, singles.size() - 1))];
    const CollapseResult one = collapse(g, SubgraphSelection{{single}, "MACRO"});
    if (!(expand(one.graph, one.provenance) == g)) {
      return describe(seed, "singleton collapse did not round-trip");
    }
  }
  if (performed < 100) {
    return "only " + std::to_string(performed) + " of 100 selections collapsed";
  }
  return std::nullopt;
}

// Sample means sit within four standard errors of the analytic value on
// 20 seeded graphs, and a deterministic chain has exactly zero spread.
Failure check_monte_carlo_consistency() {
  for (std::uint64_t seed = 5400; seed < 5420; ++seed) {
    const Graph g = random_dag(seed);
    const MonteCarloReport mc = monte_carlo_energy(g, 100000, seed);
    const double analytic = expected_energy(g).per_vertex.at(g.entry());
    const double se = mc.std_dev / std::sqrt(static_cast<double>(mc.samples));
    const double slack = 4.0 * se + 1e-9 * std::max(1.0, std::fabs(analytic));
    if (std::fabs(mc.mean - analytic) > slack) {
      return describe(seed, "sample mean " + std::to_string(mc.mean) + " vs analytic " +
                                std::to_string(analytic) + " exceeds 4 standard errors");
    }
  }

  const MonteCarloReport fixed = monte_carlo_energy(chain(), 1000, 99);
  if (fixed.std_dev != 0.0 || fixed.mean != 7.0) {
    return "deterministic chain should give std 0 and mean 7";
  }
  return std::nullopt;
}

// Edge probabilities recovered from sampled traces stay within the
// binomial four-sigma envelope; estimated graphs validate cleanly; the
// coefficient of variation is scale invariant.
Failure check_ingestion_round_trip() {
  for (std::uint64_t seed = 5900; seed < 5910; ++seed) {
    const Graph g = random_dag(seed);
    const std::uint64_t runs = 4000;

    TraceSet traces;
    std::map<VertexId, std::size_t> departures;
    std::map<std::pair<VertexId, VertexId>, std::size_t> crossings;
    for (std::uint64_t i = 0; i < runs; ++i) {
      const SampledRun run = sample_run(g, seed ^ 0x7ace5ULL, i);
      TraceRun row;
      row.run_id = "r" + std::to_string(i);
      row.visit_sequence = run.path;
      row.total_energy = run.energy;
      traces.runs.push_back(std::move(row));
      for (std::size_t k = 0; k + 1 < run.path.size(); ++k) {
        ++departures[run.path[k]];
        ++crossings[{run.path[k], run.path[k + 1]}];
      }
      for (const VertexId& v : run.path) {
        traces.universe.insert(v);
      }
    }

    std::map<VertexId, double> state_costs;
    for (const auto& [id, cost] : g.vertex_costs()) {
      state_costs[id] = cost;
    }
    std::map<std::pair<VertexId, VertexId>, double> transition_costs;
    for (const auto& [from, succ] : g.adjacency()) {
      for (const auto& [to, data] : succ) {
        transition_costs[{from, to}] = data.transition_cost;
      }
    }
    const EstimatedGraph estimated = estimate_graph(traces, state_costs, transition_costs);
    if (!validate_graph(estimated.graph).empty()) {
      return describe(seed, "estimated graph has validation violations");
    }

    for (const auto& [from, succ] : g.adjacency()) {
      const auto seen = departures.find(from);
      if (seen == departures.end()) {
        continue;  // vertex never reached; nothing to recover
      }
      const double n = static_cast<double>(seen->second);
      for (const auto& [to, data] : succ) {
        const double p = *data.probability;
        double estimate = 0.0;
        if (const EdgeData* edge = estimated.graph.edge(from, to)) {
          estimate = *edge->probability;
        }
        const double envelope = 4.0 * std::sqrt(p * (1.0 - p) / n) + 1e-12;
        if (std::fabs(estimate - p) > envelope) {
          return describe(seed, "edge " + from + "->" + to + " estimate " +
                                    std::to_string(estimate) + " vs true " + std::to_string(p));
        }
      }
    }
  }

  for (std::uint64_t seed = 6800; seed < 7800; ++seed) {
    Rng rng(seed);
    const std::vector<double> series =
        random_series(seed, static_cast<std::size_t>(rng.range(2, 50)));
    const double scale = 0.001 + rng.unit() * 999.0;
    std::vector<double> scaled = series;
    for (double& x : scaled) {
      x *= scale;
    }
    const double cv = energy_cv(series).cv;
    const double cv_scaled = energy_cv(scaled).cv;
    if (std::fabs(cv - cv_scaled) > 1e-12) {
      return describe(seed, "cv changed under scaling by " + std::to_string(scale));
    }
  }
  return std::nullopt;
}

// Serialize/parse round-trips the whole corpus structurally, and the
// command-line binary honors the 0/1/2 exit contract per command.
Failure check_cli_contract() {
  for (std::uint64_t seed = 5000; seed < 5200; ++seed) {
    const Graph g = random_dag(seed);
    if (!(parse_graph_document(serialize_graph_document(g)) == g)) {
      return describe(seed, "document round-trip changed the graph");
    }
  }
  for (const Graph& g : {diamond(), chain(), self_loop(), leaky()}) {
    if (!(parse_graph_document(serialize_graph_document(g)) == g)) {
      return "document round-trip changed a fixture graph";
    }
  }

  const char* cli = std::getenv("EFG_CLI");
  if (cli == nullptr) {
    return "EFG_CLI is not set; cannot drive the binary";
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("efg-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);

  auto write = [&dir](const std::string& name, const std::string& text) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path.string();
  };
  const std::string diamond_doc = write("diamond.json", serialize_graph_document(diamond()));
  const std::string invalid_doc = write("invalid.json",
                                        R"({"schema_version": 1, "entry": "A", "terminals": [],
 "vertices": [{"id": "A", "cost": -1.0}], "edges": []})");
  const std::string broken_doc = write("broken.json", "{\n");
  const std::string traces_file = write("traces.csv",
                                        "u1,10.0,a=1;b=2,A>B>D\n"
                                        "u1,12.0,a=3;b=6,A>B>D\n"
                                        "u2,5.0,a=1;b=2,A>C>D\n"
                                        "u2,5.5,a=2;b=4,A>C>D\n");
  const std::string out_file = (dir / "out.json").string();

  auto exit_code = [&dir](const std::string& args) {
    static int call = 0;
    const std::string sink = (dir / ("run." + std::to_string(++call))).string();
    const int status = std::system((args + " >" + sink + " 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const std::string binary = std::string("'") + cli + "'";

  const struct {
    std::string args;
    int expected;
  } cases[] = {
      {binary + " validate " + diamond_doc, 0},
      {binary + " bounds " + diamond_doc, 0},
      {binary + " expect " + diamond_doc, 0},
      {binary + " optimize " + diamond_doc, 0},
      {binary + " impact " + diamond_doc + " --vertex C --new-cost 2", 0},
      {binary + " cascade --savings 0.2,0.3", 0},
      {binary + " collapse " + diamond_doc + " --members B --macro-id M --out " + out_file, 0},
      {binary + " ingest " + traces_file, 0},
      {binary + " correlate " + traces_file + " --metric-a a --metric-b b", 0},
      {binary + " export-dot " + diamond_doc, 0},
      {binary + " simulate " + diamond_doc + " --samples 100 --seed 1", 0},
      {binary + " validate " + invalid_doc, 1},
      {binary + " collapse " + diamond_doc + " --members B,C,D --macro-id M --out " + out_file,
       1},
      {binary + " validate " + broken_doc, 2},
      {binary + " validate " + (dir / "missing.json").string(), 2},
      {binary + " bounds " + diamond_doc + " --no-such-flag", 2},
  };
  for (const auto& c : cases) {
    const int got = exit_code(c.args);
    if (got != c.expected) {
      return "expected exit " + std::to_string(c.expected) + ", got " + std::to_string(got) +
             " from: " + c.args;
    }
  }
  return std::nullopt;
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Failure (*check)();
  } criteria[] = {
      {"oracle equivalence", check_oracle_equivalence},
      {"bounds exactness", check_bounds_exactness},
      {"policy optimality", check_policy_optimality},
      {"node-impact consistency", check_node_impact_consistency},
      {"cascade reproduction", check_cascade_reproduction},
      {"hierarchical conservation", check_hierarchical_conservation},
      {"monte carlo consistency", check_monte_carlo_consistency},
      {"ingestion round-trip", check_ingestion_round_trip},
      {"cli contract", check_cli_contract},
  };

  bool all_passed = true;
  for (const auto& criterion : criteria) {
    Failure failure;
    try {
      failure = criterion.check();
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    if (failure) {
      all_passed = false;
      std::cout << "FAIL  " << criterion.name << "  (" << *failure << ")\n";
    } else {
      std::cout << "PASS  " << criterion.name << "\n";
    }
  }
  return all_passed ? 0 : 1;
}
