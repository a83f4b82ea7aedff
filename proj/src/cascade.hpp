#pragma once

#include <optional>
#include <string>
#include <vector>

namespace efg {

// A set of optimizations with fractional savings in [0, 1) and their
// multiplicatively combined prediction 1 - prod(1 - s_i).
struct CascadePlan {
  std::vector<double> savings;
  std::vector<std::string> labels;
  double predicted_combined = 0.0;
  std::optional<double> observed_combined;
};

// labels may be empty; otherwise one per saving.
CascadePlan cascade_predict(std::vector<double> savings,
                            std::vector<std::string> labels = {});

// Raw delta in percentage points, predicted minus observed.
double cascade_compare(double predicted, double observed);

// One-decimal display form of a percentage-point delta: "+5.1", "-0.6",
// or "0.0" when it rounds to zero.
std::string format_pp(double raw_pp);

// Descending by prediction; ties prefer fewer optimizations, then
// lexicographically smaller labels. Keeps at most top_k plans.
std::vector<CascadePlan> cascade_rank(std::vector<CascadePlan> candidates, std::size_t top_k);

}  // namespace efg
