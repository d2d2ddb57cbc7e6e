#pragma once

#include <cstddef>
#include <vector>

#include "hardynls/errors.hpp"

namespace hardynls {

/// LU factors of a tridiagonal matrix without pivoting (the matrices here are
/// diagonally dominant). lower[i] couples row i+1 to column i, upper[i] couples
/// row i to column i+1.
template <class T>
class TridiagonalLU {
 public:
  TridiagonalLU() = default;

  TridiagonalLU(const std::vector<T>& lower, const std::vector<T>& diag,
                const std::vector<T>& upper) {
    factor(lower, diag, upper);
  }

  void factor(const std::vector<T>& lower, const std::vector<T>& diag,
              const std::vector<T>& upper) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() + 1 != n || upper.size() + 1 != n) {
      throw ShapeError("tridiagonal: inconsistent band lengths");
    }
    upper_ = upper;
    lower_ = lower;
    pivot_.assign(n, T{});
    pivot_[0] = diag[0];
    for (std::size_t i = 1; i < n; ++i) {
      lower_[i - 1] = lower[i - 1] / pivot_[i - 1];
      pivot_[i] = diag[i] - lower_[i - 1] * upper_[i - 1];
    }
    for (const T& p : pivot_) {
      if (p == T{}) throw DegenerateInputError("tridiagonal: zero pivot");
    }
  }

  std::size_t size() const { return pivot_.size(); }

  template <class V>
  void solve_in_place(std::vector<V>& b) const {
    const std::size_t n = pivot_.size();
    if (b.size() != n) throw ShapeError("tridiagonal: rhs length mismatch");
    for (std::size_t i = 1; i < n; ++i) b[i] -= lower_[i - 1] * b[i - 1];
    b[n - 1] /= pivot_[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      b[i] = (b[i] - upper_[i] * b[i + 1]) / pivot_[i];
    }
  }

 private:
  std::vector<T> lower_;
  std::vector<T> pivot_;
  std::vector<T> upper_;
};

}  // namespace hardynls
