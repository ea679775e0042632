#pragma once

// Dense symmetric eigensolver (Householder tridiagonalization followed by the
// implicit QL iteration), a closed-form oracle for path matrices, and a power
// method for the Perron eigenvalue of the shifted Harper matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heisenspec/errors.hpp"
#include "heisenspec/matrix.hpp"
#include "heisenspec/representations.hpp"

namespace heisenspec {

struct SymmetricSpectrum {
  std::vector<double> eigenvalues;  // ascending
  double residual = 0.0;            // max ||Av - λv|| / ||A|| over the computed pairs
};

struct Eigensystem {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // column k belongs to values[k]
};

namespace detail {

// Householder reduction of the symmetric matrix held in v to tridiagonal form.
// On return d holds the diagonal, e the subdiagonal in e[1..n-1], and v the
// accumulated orthogonal transformation (left as scratch when !Accumulate).
template <bool Accumulate = true>
void householder_tridiagonalize(RealMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(v.size());
  d.assign(static_cast<std::size_t>(n), 0.0);
  e.assign(static_cast<std::size_t>(n), 0.0);
  auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
  auto V = [&](int i, int j) -> double& { return v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  for (int j = 0; j < n; ++j) D(j) = V(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(D(k));
    if (scale == 0.0) {
      E(i) = D(i - 1);
      for (int j = 0; j < i; ++j) {
        D(j) = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        D(k) /= scale;
        h += D(k) * D(k);
      }
      double f = D(i - 1);
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      E(i) = scale * g;
      h -= f * g;
      D(i - 1) = f - g;
      for (int j = 0; j < i; ++j) E(j) = 0.0;

      for (int j = 0; j < i; ++j) {
        f = D(j);
        V(j, i) = f;
        g = E(j) + V(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * D(k);
          E(k) += V(k, j) * f;
        }
        E(j) = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        E(j) /= h;
        f += E(j) * D(j);
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) E(j) -= hh * D(j);
      for (int j = 0; j < i; ++j) {
        f = D(j);
        g = E(j);
        for (int k = j; k <= i - 1; ++k) V(k, j) -= (f * E(k) + g * D(k));
        D(j) = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    D(i) = h;
  }

  if constexpr (!Accumulate) {
    for (int j = 0; j < n; ++j) D(j) = V(j, j);
    E(0) = 0.0;
    return;
  }

  for (int i = 0; i < n - 1; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = D(i + 1);
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) D(k) = V(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (int k = 0; k <= i; ++k) V(k, j) -= g * D(k);
      }
    }
    for (int k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    D(j) = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  E(0) = 0.0;
}

// Implicit QL iteration on the tridiagonal (d, e).  Each sweep uses the shift
// given by the eigenvalue of the leading 2x2 block nearest to d[l].
template <bool WithVectors>
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, RealMatrix& v) {
  const int n = static_cast<int>(d.size());
  auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
  auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
  auto V = [&](int i, int j) -> double& { return v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  for (int i = 1; i < n; ++i) E(i - 1) = E(i);
  E(n - 1) = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 30 * std::max(n, 1);
  double f = 0.0;
  double tst1 = 0.0;
  int sweeps = 0;

  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(D(l)) + std::abs(E(l)));
    int m = l;
    while (m < n - 1 && std::abs(E(m)) > eps * tst1) ++m;

    if (m > l) {
      do {
        if (++sweeps > max_sweeps)
          throw NumericalError("QL iteration did not converge after " + std::to_string(max_sweeps) +
                               " sweeps; remaining off-diagonal |e| = " + std::to_string(std::abs(E(l))) +
                               " (relative " + std::to_string(std::abs(E(l)) / tst1) + ")");
        double g = D(l);
        double p = (D(l + 1) - g) / (2.0 * E(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        D(l) = E(l) / (p + r);
        D(l + 1) = E(l) * (p + r);
        const double dl1 = D(l + 1);
        double h = g - D(l);
        for (int i = l + 2; i < n; ++i) D(i) -= h;
        f += h;

        p = D(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = E(l + 1);
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * E(i);
          h = c * p;
          r = std::hypot(p, E(i));
          E(i + 1) = s * r;
          s = E(i) / r;
          c = p / r;
          p = c * D(i) - s * g;
          D(i + 1) = h + s * (c * g + s * D(i));
          if constexpr (WithVectors) {
            for (int k = 0; k < n; ++k) {
              h = V(k, i + 1);
              V(k, i + 1) = s * V(k, i) + c * h;
              V(k, i) = c * V(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * E(l) / dl1;
        E(l) = s * p;
        D(l) = c * p;
      } while (std::abs(E(l)) > eps * tst1);
    }
    D(l) += f;
    E(l) = 0.0;
  }
}

inline void require_symmetric(const RealMatrix& a) {
  require(a.size() >= 1, "matrix must be non-empty");
  require(a.is_symmetric(), "matrix must be exactly symmetric");
}

}  // namespace detail

inline Eigensystem symmetric_eigensystem(const RealMatrix& a) {
  detail::require_symmetric(a);
  RealMatrix v = a;
  std::vector<double> d, e;
  detail::householder_tridiagonalize(v, d, e);
  detail::tridiagonal_ql<true>(d, e, v);

  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  Eigensystem out{std::vector<double>(n), RealMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> symmetric_eigenvalues(const RealMatrix& a) {
  detail::require_symmetric(a);
  RealMatrix v = a;
  std::vector<double> d, e;
  detail::householder_tridiagonalize<false>(v, d, e);
  detail::tridiagonal_ql<false>(d, e, v);
  std::sort(d.begin(), d.end());
  return d;
}

// max_k ||A v_k - λ_k v_k|| / ||A||_inf
inline double max_residual(const RealMatrix& a, const Eigensystem& sys) {
  const std::size_t n = a.size();
  const double norm = std::max(a.inf_norm(), std::numeric_limits<double>::min());
  double worst = 0.0;
  std::vector<double> col(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) col[i] = sys.vectors(i, k);
    const auto av = a.apply(col);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = av[i] - sys.values[k] * col[i];
      s += r * r;
    }
    worst = std::max(worst, std::sqrt(s) / norm);
  }
  return worst;
}

inline SymmetricSpectrum full_spectrum(const RealMatrix& a) {
  const auto sys = symmetric_eigensystem(a);
  return {sys.values, max_residual(a, sys)};
}

inline SymmetricSpectrum full_spectrum(const HarperMatrix& m) { return full_spectrum(m.dense()); }

// Eigenvalues only; no residual bookkeeping.  Used for q-sweeps.
inline std::vector<double> eigenvalues(const HarperMatrix& m) { return symmetric_eigenvalues(m.dense()); }

// Spectrum of the 0/1 path matrix on m vertices: 2cos(jπ/(m+1)), j = 1..m.
inline std::vector<double> path_spectrum(int m) {
  require(m >= 1, "path_spectrum needs m >= 1, got " + std::to_string(m));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = m; j >= 1; --j) out.push_back(2.0 * std::cos(j * std::numbers::pi / (m + 1)));
  // Exact zero in the middle for odd m; cos(π/2) rounds to ~6e-17.
  if (m % 2 == 1) out[static_cast<std::size_t>(m / 2)] = 0.0;
  return out;
}

struct PowerIterationOptions {
  double tolerance = 1e-13;  // on successive Rayleigh quotients
  long max_iterations = 1'000'000;
};

namespace detail {

template <class Apply>
double shifted_power_iteration(std::size_t n, double shift, Apply&& apply, const PowerIterationOptions& opts) {
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n);
  double previous = std::numeric_limits<double>::infinity();
  for (long it = 0; it < opts.max_iterations; ++it) {
    apply(std::span<const double>(v), std::span<double>(w));
    double rq = 0.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] += shift * v[i];
      rq += v[i] * w[i];
      norm2 += w[i] * w[i];
    }
    if (norm2 == 0.0) return -shift;  // shifted matrix annihilates the start vector
    if (std::abs(rq - previous) < opts.tolerance) return rq - shift;
    previous = rq;
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] * inv;
  }
  throw NumericalError("power iteration did not converge within " + std::to_string(opts.max_iterations) +
                       " iterations");
}

}  // namespace detail

// Largest eigenvalue of a Harper matrix: power iteration on the entrywise
// non-negative A + 2I, whose top eigenvalue is simple (Perron-Frobenius).
inline double max_eigenvalue(const HarperMatrix& m, const PowerIterationOptions& opts = {}) {
  require(m.corner() >= 0.0, "power iteration needs a non-negative corner entry");
  return detail::shifted_power_iteration(
      static_cast<std::size_t>(m.n()), 2.0,
      [&](std::span<const double> in, std::span<double> out) { m.apply(in, out); }, opts);
}

// Largest eigenvalue of a symmetric matrix that becomes entrywise
// non-negative after adding shift*I.
inline double max_eigenvalue(const RealMatrix& a, double shift = 0.0, const PowerIterationOptions& opts = {}) {
  detail::require_symmetric(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      require(a(i, j) + (i == j ? shift : 0.0) >= 0.0, "shifted matrix must be entrywise non-negative");
  return detail::shifted_power_iteration(
      a.size(), shift,
      [&](std::span<const double> in, std::span<double> out) {
        const auto r = a.apply(in);
        std::copy(r.begin(), r.end(), out.begin());
      },
      opts);
}

// Largest eigenvalue through the dense QL solver.
inline double top_eigenvalue(const HarperMatrix& m) { return eigenvalues(m).back(); }

inline constexpr int kDefaultLemmaThreshold = 50;

struct Lemma22Check {
  int n = 0;
  double lambda = 0.0;  // largest eigenvalue of T_1(Δ̃_n)
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  double gap_times_n = 0.0;  // (4 - λ) n
};

// 4 - 40/n < λ_n < 4 - 2/n
inline Lemma22Check check_lemma_2_2(int n, int n0 = kDefaultLemmaThreshold) {
  require_prime(n);
  require(n >= n0, "lemma check needs n >= " + std::to_string(n0) + ", got " + std::to_string(n));
  Lemma22Check r;
  r.n = n;
  r.lambda = max_eigenvalue(HarperMatrix(n, 1));
  r.lower_bound = 4.0 - 40.0 / n;
  r.upper_bound = 4.0 - 2.0 / n;
  r.lower_ok = r.lower_bound < r.lambda;
  r.upper_ok = r.lambda < r.upper_bound;
  r.gap_times_n = (4.0 - r.lambda) * n;
  return r;
}

struct Lemma23Check {
  int n = 0;
  double mu = 0.0;     // max over q of the largest eigenvalue of T_q(Δ̃_n)
  double bound = 0.0;  // 4 - 3/(5n)
  bool ok = false;
  int argmax_q = 0;    // in 1..(n-1)/2; n - argmax_q attains the same value
};

// μ_n <= 4 - 3/(5n), scanning q = 1..(n-1)/2 since T_q and T_{n-q} are isospectral.
// Top eigenvalues come from QL: for larger q the two leading eigenvalues are
// nearly degenerate and power iteration stalls.
inline Lemma23Check check_lemma_2_3(int n, int n0 = kDefaultLemmaThreshold) {
  require_prime(n);
  require(n >= n0, "lemma check needs n >= " + std::to_string(n0) + ", got " + std::to_string(n));
  require(n >= 3, "all-q bound needs an odd prime");
  Lemma23Check r;
  r.n = n;
  r.mu = -std::numeric_limits<double>::infinity();
  for (int q = 1; q <= (n - 1) / 2; ++q) {
    const double lam = top_eigenvalue(HarperMatrix(n, q));
    if (lam > r.mu) {
      r.mu = lam;
      r.argmax_q = q;
    }
  }
  r.bound = 4.0 - 3.0 / (5.0 * n);
  r.ok = r.mu <= r.bound;
  return r;
}

}  // namespace heisenspec
