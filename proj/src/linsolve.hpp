#pragma once

#include <cstddef>
#include <vector>

namespace efg {

// Dense LU factorization with partial pivoting for the small absorbing-chain
// systems this library produces. Row-major storage.
class LuFactors {
public:
  // Factorizes in place; throws a convergence error on a singular pivot.
  LuFactors(std::vector<double> matrix, std::size_t n);

  std::vector<double> solve(std::vector<double> rhs) const;

  // One-norm condition estimate kappa_1 = |A|_1 * |A^-1|_1, computed from the
  // factors via one solve per unit vector.
  double condition_estimate() const;

  std::size_t size() const { return n_; }

private:
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
  double norm1_ = 0.0;
  std::size_t n_ = 0;
};

}  // namespace efg
