#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace efg {

// Neumaier-compensated accumulator. Used wherever a sum feeds an exactness
// contract (total graph energy, macro-state cost) so that regrouping terms
// does not drift past the documented tolerances.
class CompensatedSum {
public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// |a - b| <= tol * max(1, |a|, |b|): relative comparison with an absolute
// floor of 1 so that values near zero stay comparable.
inline bool nearly_equal(double a, double b, double tol) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// SplitMix64 step; the Monte Carlo sampler derives one independent stream
// per sample index from (seed, index) so results are bit-identical no
// matter how samples are scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace efg
