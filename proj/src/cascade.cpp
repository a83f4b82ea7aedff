#include "cascade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "errors.hpp"
#include "numeric.hpp"

namespace efg {

CascadePlan cascade_predict(std::vector<double> savings, std::vector<std::string> labels) {
  if (savings.empty()) {
    fail(Errc::invalid_argument, "savings list is empty");
  }
  if (!labels.empty() && labels.size() != savings.size()) {
    fail(Errc::invalid_argument, "expected " + std::to_string(savings.size()) +
                                     " labels, got " + std::to_string(labels.size()));
  }
  double remainder = 1.0;
  double largest = 0.0;
  for (double s : savings) {
    if (!(s >= 0.0) || s >= 1.0) {
      fail(Errc::out_of_range, "saving " + format_double(s) + " outside [0, 1)");
    }
    remainder *= 1.0 - s;
    largest = std::max(largest, s);
  }
  CascadePlan plan;
  plan.savings = std::move(savings);
  plan.labels = std::move(labels);
  // The combined saving dominates every individual saving; rounding in the
  // complement product can land one ulp below, so clamp to keep it true.
  plan.predicted_combined = std::max(1.0 - remainder, largest);
  return plan;
}

double cascade_compare(double predicted, double observed) {
  return (predicted - observed) * 100.0;
}

std::string format_pp(double raw_pp) {
  double rounded = std::round(raw_pp * 10.0) / 10.0;
  if (rounded == 0.0) {
    return "0.0";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%+.1f", rounded);
  return buf;
}

std::vector<CascadePlan> cascade_rank(std::vector<CascadePlan> candidates, std::size_t top_k) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const CascadePlan& a, const CascadePlan& b) {
                     if (a.predicted_combined != b.predicted_combined) {
                       return a.predicted_combined > b.predicted_combined;
                     }
                     if (a.savings.size() != b.savings.size()) {
                       return a.savings.size() < b.savings.size();
                     }
                     return a.labels < b.labels;
                   });
  if (candidates.size() > top_k) {
    candidates.resize(top_k);
  }
  return candidates;
}

}  // namespace efg
