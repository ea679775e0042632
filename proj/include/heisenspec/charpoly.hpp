#pragma once

// Characteristic polynomial P_{n,q}(x) = det(xI - T_q(Δ̃_n)) of the Harper
// matrix, through the weighted cycle graph Γ_{n,q}.
//
// Vertex k of the n-cycle carries x - 2cos(2πqk/n), every edge carries -1.
// K_{n,q} sums, over all sets of pairwise disjoint edges, the product of the
// chosen edge weights and the weights of the uncovered vertices.  Leibniz
// expansion of the determinant produces exactly these monomials plus the two
// full cyclic permutations, which is the closure term below.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "heisenspec/errors.hpp"
#include "heisenspec/matrix.hpp"
#include "heisenspec/representations.hpp"

namespace heisenspec {

// coefficients[i] multiplies x^i
using Polynomial = std::vector<double>;

inline constexpr int kMaxExpandedDegree = 64;
inline constexpr int kMaxBruteForceSize = 12;

inline double horner(const Polynomial& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) return {0.0};
  Polynomial d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

// Diagonal 2cos(2πqk/n), k = 0..n-1.  Any n >= 3 and 1 <= q <= n-1.
inline std::vector<double> cycle_vertex_offsets(int n, int q) {
  const HarperMatrix m(n, q);
  return {m.diag().begin(), m.diag().end()};
}

// Contribution of the two cyclic permutations j -> j±1 to det(xI - A): each
// has sign (-1)^(n-1) and collects n off-diagonal entries equal to -1.
inline double cycle_closure_term(int n) {
  const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
  const double entries = n % 2 == 0 ? 1.0 : -1.0;
  return 2.0 * sign * entries;
}

namespace detail {

// (x - d) p
inline Polynomial times_linear(const Polynomial& p, double d) {
  Polynomial out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] += p[i];
    out[i] -= d * p[i];
  }
  return out;
}

inline Polynomial subtract(Polynomial a, const Polynomial& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

// Matching polynomial of the path on vertices first..last with vertex weights
// x - offsets[k] and edge weight -1:  p_k = (x - d_k) p_{k-1} - p_{k-2}.
inline Polynomial path_matching_poly(const std::vector<double>& offsets, std::size_t first, std::size_t last) {
  Polynomial before{1.0};
  if (first > last) return before;
  Polynomial current = times_linear(before, offsets[first]);
  for (std::size_t k = first + 1; k <= last; ++k) {
    Polynomial next = subtract(times_linear(current, offsets[k]), before);
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

}  // namespace detail

// Expanded K_{n,q}.  Matchings either avoid the closing edge (n-1, 0), giving
// the path polynomial on 0..n-1, or use it, giving -1 times the path
// polynomial on 1..n-2.
inline Polynomial matching_poly_coeffs(int n, int q) {
  require(n >= 3 && n <= kMaxExpandedDegree,
          "expanded coefficients need 3 <= n <= " + std::to_string(kMaxExpandedDegree) + ", got n = " +
              std::to_string(n));
  const auto d = cycle_vertex_offsets(n, q);
  const auto last = static_cast<std::size_t>(n - 1);
  return detail::subtract(detail::path_matching_poly(d, 0, last), detail::path_matching_poly(d, 1, last - 1));
}

// det(xI - T_q(Δ̃_n)) in expanded form: K_{n,q} plus the closure term.
inline Polynomial charpoly_coeffs(int n, int q) {
  Polynomial p = matching_poly_coeffs(n, q);
  p[0] += cycle_closure_term(n);
  return p;
}

// Trace of the monodromy M_{n-1}...M_0, M_k = [[x - d_k, -1], [1, 0]],
// kept as mantissa * exp(log_scale) together with its x-derivative.
struct Discriminant {
  double value = 0.0;
  double slope = 0.0;
  double log_scale = 0.0;

  // Full values; ±inf when they do not fit a double.
  double full_value() const { return value * std::exp(log_scale); }
  double full_slope() const { return slope * std::exp(log_scale); }

  // Sign of (trace - level) for a moderate level, exact even when the trace
  // itself would overflow.
  int sign_minus(double level) const {
    if (log_scale > 700.0) return value > 0 ? 1 : (value < 0 ? -1 : 0);
    const double diff = full_value() - level;
    return diff > 0 ? 1 : (diff < 0 ? -1 : 0);
  }
};

inline constexpr int kRescaleInterval = 32;

// Periodic discriminant of the diagonal `offsets` evaluated at x.
inline Discriminant discriminant(const std::vector<double>& offsets, double x) {
  // M = [[a, b], [c, e]] and its derivative dM, both scaled by exp(log_scale).
  double a = 1.0, b = 0.0, c = 0.0, e = 1.0;
  double da = 0.0, db = 0.0, dc = 0.0, de = 0.0;
  double log_scale = 0.0;
  std::size_t since_rescale = 0;
  for (double dk : offsets) {
    const double t = x - dk;
    const double na = t * a - c, nb = t * b - e;
    const double nda = a + t * da - dc, ndb = b + t * db - de;
    c = a;
    e = b;
    dc = da;
    de = db;
    a = na;
    b = nb;
    da = nda;
    db = ndb;
    if (++since_rescale == kRescaleInterval) {
      since_rescale = 0;
      const double s = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(e)});
      if (s > 1.0) {
        const double inv = 1.0 / s;
        a *= inv, b *= inv, c *= inv, e *= inv;
        da *= inv, db *= inv, dc *= inv, de *= inv;
        log_scale += std::log(s);
      }
    }
  }
  return {a + e, da + de, log_scale};
}

inline Discriminant discriminant(int n, int q, double x) { return discriminant(cycle_vertex_offsets(n, q), x); }

// P_{n,q}(x) = det(xI - T_q(Δ̃_n)) = trace(monodromy) - 2.
inline double charpoly_eval(int n, int q, double x) {
  require(n >= 3, "charpoly_eval needs n >= 3, got n = " + std::to_string(n));
  const Discriminant dsc = discriminant(n, q, x);
  const double v = dsc.full_value() - 2.0;
  if (!std::isfinite(v))
    throw NumericalError("P_{" + std::to_string(n) + "," + std::to_string(q) + "}(" + std::to_string(x) +
                         ") overflows a double (log magnitude " + std::to_string(dsc.log_scale) + ")");
  return v;
}

// K_{n,q}(x) by the same product: the trace with the closure term removed.
inline double matching_poly_eval(int n, int q, double x) {
  return charpoly_eval(n, q, x) - cycle_closure_term(n);
}

namespace detail {

struct LinearEntry {
  double constant = 0.0;  // entry = constant + slope * x
  double slope = 0.0;
  bool nonzero() const { return constant != 0.0 || slope != 0.0; }
};

inline int permutation_sign(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

inline void leibniz(const std::vector<std::vector<LinearEntry>>& m, std::size_t row, std::uint32_t used,
                    std::vector<int>& perm, Polynomial& product, Polynomial& acc) {
  const std::size_t n = m.size();
  if (row == n) {
    const double s = permutation_sign(perm);
    for (std::size_t i = 0; i < product.size(); ++i) acc[i] += s * product[i];
    return;
  }
  for (std::size_t col = 0; col < n; ++col) {
    if ((used >> col) & 1U) continue;
    const LinearEntry& ent = m[row][col];
    if (!ent.nonzero()) continue;
    Polynomial saved = product;
    Polynomial next(product.size(), 0.0);
    for (std::size_t i = 0; i < product.size(); ++i) {
      next[i] += ent.constant * product[i];
      if (i + 1 < next.size()) next[i + 1] += ent.slope * product[i];
    }
    product = std::move(next);
    perm[row] = static_cast<int>(col);
    leibniz(m, row + 1, used | (1U << col), perm, product, acc);
    product = std::move(saved);
  }
}

}  // namespace detail

// det(xI - A) by the Leibniz sum over permutations, skipping zero entries.
inline Polynomial leibniz_charpoly(const RealMatrix& a) {
  const std::size_t n = a.size();
  require(n >= 1 && n <= static_cast<std::size_t>(kMaxBruteForceSize),
          "brute-force determinant needs 1 <= n <= " + std::to_string(kMaxBruteForceSize));
  std::vector<std::vector<detail::LinearEntry>> m(n, std::vector<detail::LinearEntry>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = {-a(i, j), i == j ? 1.0 : 0.0};
  Polynomial product(n + 1, 0.0);
  product[0] = 1.0;
  Polynomial acc(n + 1, 0.0);
  std::vector<int> perm(n, -1);
  detail::leibniz(m, 0, 0U, perm, product, acc);
  return acc;
}

inline Polynomial brute_force_charpoly(int n, int q) {
  require(n <= kMaxBruteForceSize,
          "brute-force charpoly needs n <= " + std::to_string(kMaxBruteForceSize) + ", got n = " + std::to_string(n));
  return leibniz_charpoly(HarperMatrix(n, q).dense());
}

}  // namespace heisenspec
