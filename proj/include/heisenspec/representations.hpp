#pragma once

// Irreducible representations of the finite Heisenberg group H_n for prime n
// and the image of the Laplace element Δ̃ = x + x^-1 + y + y^-1 in each.
//
//   one-dimensional T_{α,β}:  x -> e^{2πiα/n},  y -> e^{2πiβ/n},  z -> 1
//   n-dimensional  T_q:       x u_j = u_{j+1},  y u_j = e^{2πiqj/n} u_j
//
// In T_q the Laplace element is the periodic Jacobi ("Harper") matrix with
// diagonal 2cos(2πqj/n) and unit off-diagonal and corner entries.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "heisenspec/errors.hpp"
#include "heisenspec/matrix.hpp"

namespace heisenspec {

// Smallest prime factor of n >= 2 by trial division (n itself when prime).
inline std::int64_t smallest_factor(std::int64_t n) {
  require(n >= 2, "smallest_factor needs n >= 2, got " + std::to_string(n));
  if (n % 2 == 0) return 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return d;
  return n;
}

inline bool is_prime(std::int64_t n) { return n >= 2 && smallest_factor(n) == n; }

inline void require_prime(std::int64_t n, const std::string& name = "n") {
  require(n >= 2, name + " must be prime, got " + std::to_string(n));
  const std::int64_t f = smallest_factor(n);
  if (f != n)
    throw PreconditionError(name + " must be prime, got " + std::to_string(n) + " (divisible by " +
                            std::to_string(f) + ")");
}

struct OneDimRep {
  int alpha = 0;
  int beta = 0;
};

// Scalar value of Δ̃_n in T_{α,β}.
inline double laplace_value(int n, OneDimRep rep) {
  require(n >= 1, "n must be positive");
  require(rep.alpha >= 1 && rep.alpha <= n && rep.beta >= 1 && rep.beta <= n,
          "alpha and beta must lie in 1..n");
  const double w = 2.0 * std::numbers::pi / n;
  return 2.0 * std::cos(w * rep.alpha) + 2.0 * std::cos(w * rep.beta);
}

struct OneDimEntry {
  OneDimRep rep;
  double laplace;
};

struct IrrepTable {
  int n = 0;
  std::vector<OneDimEntry> one_dim;  // n^2 characters, α-major
  std::vector<int> multi_dim;        // q = 1..n-1, each of dimension n

  // Σ dim^2 over the table; equals |H_n| = n^3 when the table is complete.
  std::int64_t dimension_square_sum() const {
    const auto d = static_cast<std::int64_t>(n);
    return static_cast<std::int64_t>(one_dim.size()) + static_cast<std::int64_t>(multi_dim.size()) * d * d;
  }
};

inline IrrepTable irrep_table(int n) {
  require_prime(n);
  IrrepTable t;
  t.n = n;
  t.one_dim.reserve(static_cast<std::size_t>(n) * n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) t.one_dim.push_back({{a, b}, laplace_value(n, {a, b})});
  for (int q = 1; q < n; ++q) t.multi_dim.push_back(q);
  return t;
}

// T_q(Δ̃_n), stored by its diagonal only.  Row j couples to j-1, j+1 (mod n)
// with weight `corner` on the wrap-around pair (n-1, 0) and 1 elsewhere.
// corner = +1 is the representation matrix; corner = -1 gives the
// antiperiodic twin used for band edges.
class HarperMatrix {
 public:
  HarperMatrix(int n, int q, double corner = 1.0) : n_(n), q_(q), corner_(corner) {
    require(n >= 3, "Harper matrix needs n >= 3, got n = " + std::to_string(n));
    require(q >= 1 && q <= n - 1,
            "q must lie in 1..n-1, got q = " + std::to_string(q) + " for n = " + std::to_string(n));
    diag_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      // Reduce qj mod n first so the angle stays in [0, 2π).
      const auto r = static_cast<std::int64_t>(q) * j % n;
      diag_[static_cast<std::size_t>(j)] = 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / n);
    }
  }

  int n() const { return n_; }
  int q() const { return q_; }
  double corner() const { return corner_; }
  std::span<const double> diag() const { return diag_; }

  double trace() const {
    double s = 0.0;
    for (double d : diag_) s += d;
    return s;
  }

  // out = A v
  void apply(std::span<const double> v, std::span<double> out) const {
    const std::size_t n = diag_.size();
    for (std::size_t j = 0; j < n; ++j) {
      double s = diag_[j] * v[j];
      if (j > 0) s += v[j - 1];
      if (j + 1 < n) s += v[j + 1];
      out[j] = s;
    }
    out[0] += corner_ * v[n - 1];
    out[n - 1] += corner_ * v[0];
  }

  RealMatrix dense() const {
    const std::size_t n = diag_.size();
    RealMatrix m(n);
    for (std::size_t j = 0; j < n; ++j) {
      m(j, j) = diag_[j];
      if (j + 1 < n) m(j, j + 1) = m(j + 1, j) = 1.0;
    }
    m(0, n - 1) += corner_;
    m(n - 1, 0) += corner_;
    return m;
  }

 private:
  int n_;
  int q_;
  double corner_;
  std::vector<double> diag_;
};

inline HarperMatrix harper_matrix(int n, int q) { return HarperMatrix(n, q); }

// Explicit unitary matrices of T_q(x), T_q(y) in the basis u_0..u_{n-1}.
struct RepresentationMatrices {
  ComplexMatrix x;
  ComplexMatrix y;
};

inline RepresentationMatrices representation_matrices(int n, int q) {
  require(n >= 2 && q >= 1 && q <= n - 1, "need n >= 2 and 1 <= q <= n-1");
  const auto size = static_cast<std::size_t>(n);
  RepresentationMatrices r{ComplexMatrix(size), ComplexMatrix(size)};
  for (std::size_t j = 0; j < size; ++j) {
    r.x((j + 1) % size, j) = 1.0;  // column j is the image of u_j
    const auto phase = static_cast<double>(static_cast<std::int64_t>(q) * static_cast<std::int64_t>(j) % n);
    r.y(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * phase / n);
  }
  return r;
}

// T_q(x) T_q(y) T_q(x)^-1 T_q(y)^-1, the image of the central generator z.
inline ComplexMatrix commutator_image(int n, int q) {
  const auto r = representation_matrices(n, q);
  return r.x * r.y * r.x.adjoint() * r.y.adjoint();
}

// Laplace image x + x^* + y + y^* assembled from the explicit matrices.
inline ComplexMatrix laplace_image(int n, int q) {
  const auto r = representation_matrices(n, q);
  const auto xa = r.x.adjoint();
  const auto ya = r.y.adjoint();
  ComplexMatrix out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out(i, j) = r.x(i, j) + xa(i, j) + r.y(i, j) + ya(i, j);
  return out;
}

}  // namespace heisenspec
