#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace efg {

namespace {

double sample_std(const std::vector<double>& values) {
  // A constant series has zero deviation exactly, whatever the mean
  // rounds to.
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    return 0.0;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(values.size());
  double m2 = 0.0;
  for (double v : values) {
    m2 += (v - mean) * (v - mean);
  }
  return std::sqrt(m2 / static_cast<double>(values.size() - 1));
}

}  // namespace

VarianceStats energy_cv(const std::vector<double>& energies) {
  if (energies.size() < 2) {
    fail(Errc::insufficient_samples,
         "need at least 2 samples, got " + std::to_string(energies.size()));
  }
  double sum = 0.0;
  for (double e : energies) {
    sum += e;
  }
  VarianceStats stats;
  stats.mean = sum / static_cast<double>(energies.size());
  if (!(stats.mean > 0.0)) {
    fail(Errc::zero_mean, "mean is not positive; cv undefined");
  }
  stats.std_dev = sample_std(energies);
  stats.cv = stats.std_dev / stats.mean;
  return stats;
}

FlagReport flag_path_dependent(const std::map<std::string, VarianceStats>& stats_by_unit,
                               double threshold) {
  FlagReport report;
  for (const auto& [id, stats] : stats_by_unit) {
    if (stats.cv > threshold) {
      report.flagged.insert(id);
    }
  }
  report.fraction = stats_by_unit.empty()
                        ? 0.0
                        : static_cast<double>(report.flagged.size()) /
                              static_cast<double>(stats_by_unit.size());
  return report;
}

CvTable trace_cv(const TraceSet& traces) {
  std::map<std::string, std::vector<double>> energies;
  for (const TraceRun& run : traces.runs) {
    auto& unit = energies[run.run_id];
    if (run.total_energy.has_value()) {
      unit.push_back(*run.total_energy);
    }
  }
  CvTable table;
  for (const auto& [unit, values] : energies) {
    if (values.size() < 2) {
      table.warnings.push_back("unit '" + unit + "' has " + std::to_string(values.size()) +
                               " energy reading(s); need at least 2, skipping");
      continue;
    }
    try {
      table.rows.push_back(CvRow{unit, values.size(), energy_cv(values)});
    } catch (const Error& e) {
      table.warnings.push_back("unit '" + unit + "' skipped: " + e.what());
    }
  }
  return table;
}

CorrelationReport variance_correlation(const TraceSet& traces, const std::string& metric_a,
                                       const std::string& metric_b) {
  std::set<std::string> lacking;
  for (const TraceRun& run : traces.runs) {
    if (run.metrics.count(metric_a) == 0 || run.metrics.count(metric_b) == 0) {
      lacking.insert(run.run_id);
    }
  }
  if (!lacking.empty()) {
    std::string ids;
    for (const auto& id : lacking) {
      ids += ids.empty() ? id : ", " + id;
    }
    fail(Errc::missing_metric,
         "runs lacking metric '" + metric_a + "' or '" + metric_b + "': " + ids);
  }

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> units;
  for (const TraceRun& run : traces.runs) {
    auto& [a_values, b_values] = units[run.run_id];
    a_values.push_back(run.metrics.at(metric_a));
    b_values.push_back(run.metrics.at(metric_b));
  }

  CorrelationReport report;
  for (const auto& [unit, values] : units) {
    if (values.first.size() < 2) {
      fail(Errc::insufficient_samples, "unit '" + unit + "' has " +
                                           std::to_string(values.first.size()) +
                                           " run(s); need at least 2");
    }
    report.per_unit.push_back(
        CorrelationRow{unit, values.first.size(), sample_std(values.first),
                       sample_std(values.second)});
  }
  if (report.per_unit.size() < 2) {
    fail(Errc::insufficient_samples, "need at least 2 units, got " +
                                         std::to_string(report.per_unit.size()));
  }

  const double n = static_cast<double>(report.per_unit.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (const CorrelationRow& row : report.per_unit) {
    mean_a += row.std_a;
    mean_b += row.std_b;
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (const CorrelationRow& row : report.per_unit) {
    cov += (row.std_a - mean_a) * (row.std_b - mean_b);
    var_a += (row.std_a - mean_a) * (row.std_a - mean_a);
    var_b += (row.std_b - mean_b) * (row.std_b - mean_b);
  }
  if (var_a == 0.0 || var_b == 0.0) {
    fail(Errc::insufficient_samples, "zero variance across units; correlation undefined");
  }
  report.pearson_r = std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
  return report;
}

}  // namespace efg
