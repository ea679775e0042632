#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "heisenspec/errors.hpp"

namespace heisenspec {

// Small row-major square matrix.  Only what the spectral code needs.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T(0)) : n_(n), data_(n * n, fill) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

  SquareMatrix adjoint() const {
    SquareMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if constexpr (std::is_same_v<T, std::complex<double>>)
          out(j, i) = std::conj((*this)(i, j));
        else
          out(j, i) = (*this)(i, j);
      }
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  // Max-abs row sum; an upper bound on the spectral norm of a symmetric matrix.
  double inf_norm() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (const T& v : row(i)) s += std::abs(v);
      best = std::max(best, s);
    }
    return best;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    require(a.n_ == b.n_, "matrix size mismatch");
    SquareMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const T aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(std::span<const T> v) const {
    std::vector<T> out(n_, T(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<std::complex<double>>;

// Tridiagonal 0/1 matrix of the path graph on m vertices.
inline RealMatrix path_matrix(std::size_t m) {
  require(m >= 1, "path matrix needs at least one vertex");
  RealMatrix p(m);
  for (std::size_t i = 0; i + 1 < m; ++i) p(i, i + 1) = p(i + 1, i) = 1.0;
  return p;
}

}  // namespace heisenspec
