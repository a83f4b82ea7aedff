#include "linsolve.hpp"

#include <cmath>

#include "errors.hpp"

namespace efg {

LuFactors::LuFactors(std::vector<double> matrix, std::size_t n) : lu_(std::move(matrix)), n_(n) {
  for (std::size_t j = 0; j < n_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      col += std::abs(lu_[i * n_ + j]);
    }
    norm1_ = std::max(norm1_, col);
  }

  perm_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    perm_[i] = i;
  }
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t pivot_row = k;
    double pivot = std::abs(lu_[perm_[k] * n_ + k]);
    for (std::size_t i = k + 1; i < n_; ++i) {
      double cand = std::abs(lu_[perm_[i] * n_ + k]);
      if (cand > pivot) {
        pivot = cand;
        pivot_row = i;
      }
    }
    if (pivot == 0.0) {
      fail(Errc::convergence, "linear system is singular");
    }
    std::swap(perm_[k], perm_[pivot_row]);
    double diag = lu_[perm_[k] * n_ + k];
    for (std::size_t i = k + 1; i < n_; ++i) {
      double factor = lu_[perm_[i] * n_ + k] / diag;
      lu_[perm_[i] * n_ + k] = factor;
      for (std::size_t j = k + 1; j < n_; ++j) {
        lu_[perm_[i] * n_ + j] -= factor * lu_[perm_[k] * n_ + j];
      }
    }
  }
}

std::vector<double> LuFactors::solve(std::vector<double> rhs) const {
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double v = rhs[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) {
      v -= lu_[perm_[i] * n_ + j] * y[j];
    }
    y[i] = v;
  }
  std::vector<double> x(n_);
  for (std::size_t ii = n_; ii-- > 0;) {
    double v = y[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) {
      v -= lu_[perm_[ii] * n_ + j] * x[j];
    }
    x[ii] = v / lu_[perm_[ii] * n_ + ii];
  }
  return x;
}

double LuFactors::condition_estimate() const {
  if (n_ == 0) {
    return 1.0;
  }
  double inv_norm1 = 0.0;
  std::vector<double> unit(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    unit[j] = 1.0;
    std::vector<double> col = solve(unit);
    unit[j] = 0.0;
    double sum = 0.0;
    for (double v : col) {
      sum += std::abs(v);
    }
    inv_norm1 = std::max(inv_norm1, sum);
  }
  return norm1_ * inv_norm1;
}

}  // namespace efg
