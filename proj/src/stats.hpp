#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "traces.hpp"

namespace efg {

// Sample statistics (N-1 denominator) with the coefficient of variation
// std/mean; requires at least two samples and a positive mean.
struct VarianceStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double cv = 0.0;
};

VarianceStats energy_cv(const std::vector<double>& energies);

struct FlagReport {
  std::set<std::string> flagged;
  double fraction = 0.0;
};

// Ids whose cv is strictly greater than the threshold.
FlagReport flag_path_dependent(const std::map<std::string, VarianceStats>& stats_by_unit,
                               double threshold = 0.1);

struct CvRow {
  std::string unit;
  std::size_t runs = 0;
  VarianceStats stats;
};

struct CvTable {
  std::vector<CvRow> rows;
  std::vector<std::string> warnings;
};

// Per-unit (run_id group) variance statistics over per-run total
// energies. Units without at least two energy-bearing runs are skipped
// with a warning; a unit whose mean is not positive is skipped too.
CvTable trace_cv(const TraceSet& traces);

struct CorrelationRow {
  std::string unit;
  std::size_t runs = 0;
  double std_a = 0.0;
  double std_b = 0.0;
};

struct CorrelationReport {
  std::vector<CorrelationRow> per_unit;
  double pearson_r = 0.0;
};

// Groups runs by run_id into units, takes each unit's sample standard
// deviation of both metrics, and correlates the two deviations across
// units. Every run must carry both metrics and every unit needs at
// least two runs.
CorrelationReport variance_correlation(const TraceSet& traces, const std::string& metric_a,
                                       const std::string& metric_b);

}  // namespace efg
