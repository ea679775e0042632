#pragma once

// Spectral measure of the random-walk operator Δ = (x + x^-1 + y + y^-1)/4 at
// δ_e, for the finite quotients H_N (N prime), plus the stretched Chebyshev
// edge filter and the edge-mass estimate built from both.
//
// In the regular representation of H_N every irrep appears with multiplicity
// equal to its dimension, so μ_N puts
//   weight 1/N^3 on each one-dimensional value   (N^2 of them),
//   weight 1/N^2 on each eigenvalue of T_q(Δ)    (N per q, N-1 values of q).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "heisenspec/eigensolver.hpp"
#include "heisenspec/errors.hpp"
#include "heisenspec/group.hpp"
#include "heisenspec/representations.hpp"

namespace heisenspec {

inline constexpr int kDefaultDeskGuard = 311;
inline constexpr double kAtomMergeTolerance = 1e-12;
inline constexpr double kEdgeSlack = 1e-12;

struct Atom {
  double location = 0.0;  // in [-1, 1]
  double weight = 0.0;
};

struct AtomicMeasure {
  int modulus = 0;
  std::vector<Atom> atoms;  // ascending locations

  double total_weight() const {
    double s = 0.0;
    for (const Atom& a : atoms) s += a.weight;
    return s;
  }

  double moment(int k) const {
    require(k >= 0, "moment order must be non-negative");
    double s = 0.0;
    for (const Atom& a : atoms) s += a.weight * std::pow(a.location, k);
    return s;
  }
};

namespace detail {

// Sort and merge atoms closer than tol to the first atom of their cluster.
// Merged location is the weighted mean.
inline std::vector<Atom> merge_atoms(std::vector<Atom> raw, double tol) {
  std::stable_sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  std::vector<Atom> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    const double start = raw[i].location;
    double w = 0.0, wx = 0.0;
    std::size_t j = i;
    for (; j < raw.size() && raw[j].location - start <= tol; ++j) {
      w += raw[j].weight;
      wx += raw[j].weight * raw[j].location;
    }
    out.push_back({std::clamp(wx / w, -1.0, 1.0), w});
    i = j;
  }
  return out;
}

}  // namespace detail

inline AtomicMeasure finite_measure(int N, int desk_guard = kDefaultDeskGuard) {
  require(N >= 3, "finite_measure needs N >= 3, got N = " + std::to_string(N));
  require_prime(N, "N");
  require(N <= desk_guard,
          "N = " + std::to_string(N) + " exceeds the desk guard " + std::to_string(desk_guard));

  const double n3 = static_cast<double>(N) * N * N;
  const double n2 = static_cast<double>(N) * N;
  std::vector<Atom> raw;
  raw.reserve(static_cast<std::size_t>(N) * N * 2);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) raw.push_back({laplace_value(N, {a, b}) / 4.0, 1.0 / n3});
  // T_q and T_{N-q} are isospectral.
  for (int q = 1; q <= (N - 1) / 2; ++q)
    for (double lam : eigenvalues(HarperMatrix(N, q))) raw.push_back({lam / 4.0, 2.0 / n2});

  return {N, detail::merge_atoms(std::move(raw), kAtomMergeTolerance)};
}

// μ(A_t), A_t = [-1, -1+t] ∪ [1-t, 1].
inline double measure_of_edge_set(const AtomicMeasure& m, double t) {
  require(t > 0.0 && t <= 1.0, "edge width t must satisfy 0 < t <= 1, got " + std::to_string(t));
  double s = 0.0;
  for (const Atom& a : m.atoms)
    if (std::abs(a.location) >= 1.0 - t - kEdgeSlack) s += a.weight;
  return s;
}

// Chebyshev polynomial of the first kind; cosine form inside [-1, 1],
// hyperbolic form outside.
inline double chebyshev_t(int n, double x) {
  if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
  const double v = std::cosh(n * std::acosh(std::abs(x)));
  return (x < 0 && n % 2 == 1) ? -v : v;
}

// Power-basis coefficients of T_n, by T_{k+1} = 2x T_k - T_{k-1}.
inline std::vector<double> chebyshev_coefficients(int n) {
  require(n >= 0, "Chebyshev degree must be non-negative");
  std::vector<double> prev{1.0}, cur{0.0, 1.0};
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// P(x) = T_n(s x) / T_n(s),  s = n^{2-α} / (n^{2-α} - 1).
struct ChebFilter {
  int n = 0;
  double alpha = 0.0;
  double scale = 0.0;
  double normC = 0.0;  // 1 / T_n(scale)

  double operator()(double x) const { return chebyshev_t(n, scale * x) / chebyshev_t(n, scale); }

  // Outside |x| <= 1 - n^{-(2-α)} the argument s x leaves [-1, 1].
  double interior_radius() const { return 1.0 - std::pow(static_cast<double>(n), -(2.0 - alpha)); }

  // 2 exp(-√2 n^{α/2})
  double asymptotic_normC() const {
    return 2.0 * std::exp(-std::sqrt(2.0) * std::pow(static_cast<double>(n), alpha / 2.0));
  }

  // Coefficients of P in powers of x.
  std::vector<double> power_coefficients() const {
    auto c = chebyshev_coefficients(n);
    const double tn = chebyshev_t(n, scale);
    double sk = 1.0;
    for (double& v : c) {
      v *= sk / tn;
      sk *= scale;
    }
    return c;
  }
};

inline ChebFilter cheb_filter(int n, double alpha) {
  require(n >= 4 && n % 2 == 0, "filter degree n must be even and >= 4, got n = " + std::to_string(n));
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1), got " + std::to_string(alpha));
  ChebFilter f;
  f.n = n;
  f.alpha = alpha;
  const double p = std::pow(static_cast<double>(n), 2.0 - alpha);
  f.scale = p / (p - 1.0);
  f.normC = 1.0 / chebyshev_t(n, f.scale);
  return f;
}

// M + 1 equally spaced points from lo to hi.
inline std::vector<double> uniform_grid(double lo, double hi, int points) {
  require(points >= 2, "grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

struct FilterProfile {
  double at_plus_one = 0.0;
  double at_minus_one = 0.0;
  double sup_abs = 0.0;        // over the grid of [-1, 1]
  double interior_sup = 0.0;   // over grid points with |x| <= interior_radius
  double interior_radius = 0.0;
  double c0 = 0.0;             // min over grid points of [1 - 1/n^2, 1]
};

inline FilterProfile filter_profile(const ChebFilter& f, int grid_points = 10'000) {
  FilterProfile r;
  r.at_plus_one = f(1.0);
  r.at_minus_one = f(-1.0);
  r.interior_radius = f.interior_radius();
  for (double x : uniform_grid(-1.0, 1.0, grid_points)) {
    const double v = std::abs(f(x));
    r.sup_abs = std::max(r.sup_abs, v);
    if (std::abs(x) <= r.interior_radius) r.interior_sup = std::max(r.interior_sup, v);
  }
  const double n2 = static_cast<double>(f.n) * f.n;
  r.c0 = std::numeric_limits<double>::infinity();
  for (double x : uniform_grid(1.0 - 1.0 / n2, 1.0, grid_points)) r.c0 = std::min(r.c0, f(x));
  return r;
}

// Σ w P(λ)^2 = ||P(Δ_N) δ_e||^2.
template <class Filter>
double filter_norm_squared(const Filter& f, const AtomicMeasure& m) {
  double s = 0.0;
  for (const Atom& a : m.atoms) {
    const double v = f(a.location);
    s += a.weight * v * v;
  }
  return s;
}

// Same norm from power-sum moments: expand P^2 and pair with moments[k].
inline double filter_norm_squared_from_moments(const ChebFilter& f, const std::vector<double>& moments) {
  const auto c = f.power_coefficients();
  require(moments.size() >= 2 * c.size() - 1,
          "need moments up to order " + std::to_string(2 * c.size() - 2));
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) s += c[i] * c[j] * moments[i + j];
  return s;
}

// ||P(Δ) δ_e||^2 computed in the group algebra of H (or H_N) itself,
// running T_{k+1}(sΔ) = 2sΔ T_k(sΔ) - T_{k-1}(sΔ) on δ_e.  No spectral data.
inline double filter_norm_squared_on_group(const ChebFilter& f, Modulus modulus = std::nullopt) {
  using Vec = std::unordered_map<GroupElement, double, GroupElementHash>;
  const auto gens = walk_generators(modulus);
  const auto apply_delta = [&](const Vec& v) {
    Vec out;
    out.reserve(v.size() * 4);
    for (const auto& [g, c] : v)
      for (const auto& s : gens) out[g * s] += 0.25 * c;
    return out;
  };
  Vec prev{{GroupElement::identity(modulus), 1.0}};
  Vec cur;
  for (auto& [g, c] : apply_delta(prev)) cur[g] = f.scale * c;
  for (int k = 1; k < f.n; ++k) {
    Vec next = apply_delta(cur);
    for (auto& [g, c] : next) c *= 2.0 * f.scale;
    for (const auto& [g, c] : prev) next[g] -= c;
    prev = std::move(cur);
    cur = std::move(next);
  }
  const double tn = chebyshev_t(f.n, f.scale);
  // Sum in a fixed key order so the result does not depend on hashing.
  std::vector<std::pair<std::array<std::int64_t, 3>, double>> terms;
  terms.reserve(cur.size());
  for (const auto& [g, c] : cur) terms.push_back({{g.a(), g.b(), g.c()}, c});
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (const auto& [key, c] : terms) s += (c / tn) * (c / tn);
  return s;
}

inline std::optional<int> smallest_prime_in(int lo, int hi) {
  for (int p = std::max(lo, 2); p <= hi; ++p)
    if (is_prime(p)) return p;
  return std::nullopt;
}

struct EdgeMassReport {
  int n = 0;
  double alpha = 0.0;
  double t = 0.0;  // 1/n^2
  int N = 0;       // smallest prime in [n^2+1, 2n^2+1]
  double c0 = 0.0;
  double mu_edge = 0.0;  // μ_N(A_t)
  double mu_wide = 0.0;  // μ_N(A_{t^{1-α}})
  double norm_finite = 0.0;    // ||P(Δ_N) δ_e||^2, spectral
  double norm_infinite = 0.0;  // ||P(Δ) δ_e||^2 on H, group algebra
  double lhs = 0.0;  // c0 μ_N(A_t)
  double rhs = 0.0;  // μ_N(A_{t^{1-α}}) + n^-6
  bool upper_ok = false;     // norm_finite <= rhs
  bool equality_ok = false;  // |norm_infinite - norm_finite| <= tolerance
  bool lower_ok = false;     // lhs <= norm_finite
  bool chain_ok = false;
  double counting_bound = 0.0;  // 1/n^4
  bool counting_ok = false;
  double c1_estimate = 0.0;  // lhs / t^{2+α}
};

inline constexpr double kNormEqualityTolerance = 1e-10;

inline int max_report_n(int desk_guard) {
  int best = 0;
  for (int n = 4; n <= 10'000; ++n) {
    const auto p = smallest_prime_in(n * n + 1, 2 * n * n + 1);
    if (!p || *p > desk_guard) break;
    best = n;
  }
  return best;
}

inline EdgeMassReport theorem_4_3_report(int n, double alpha, int desk_guard = kDefaultDeskGuard) {
  require(n >= 4, "n must be >= 4, got " + std::to_string(n));
  require(n <= 10'000, "n is far beyond desk scale, got " + std::to_string(n));
  const auto prime = smallest_prime_in(n * n + 1, 2 * n * n + 1);
  if (!prime) throw NumericalError("no prime in [n^2+1, 2n^2+1] for n = " + std::to_string(n));
  require(*prime <= desk_guard, "N = " + std::to_string(*prime) + " exceeds the desk guard " +
                                    std::to_string(desk_guard) + "; the largest admissible n is " +
                                    std::to_string(max_report_n(desk_guard)));
  const ChebFilter f = cheb_filter(n, alpha);
  const AtomicMeasure m = finite_measure(*prime, desk_guard);

  EdgeMassReport r;
  r.n = n;
  r.alpha = alpha;
  r.t = 1.0 / (static_cast<double>(n) * n);
  r.N = *prime;
  r.c0 = filter_profile(f).c0;
  r.mu_edge = measure_of_edge_set(m, r.t);
  r.mu_wide = measure_of_edge_set(m, std::pow(r.t, 1.0 - alpha));
  r.norm_finite = filter_norm_squared(f, m);
  r.norm_infinite = filter_norm_squared_on_group(f);
  r.lhs = r.c0 * r.mu_edge;
  r.rhs = r.mu_wide + std::pow(static_cast<double>(n), -6.0);
  r.upper_ok = r.norm_finite <= r.rhs;
  r.equality_ok = std::abs(r.norm_infinite - r.norm_finite) <= kNormEqualityTolerance;
  r.lower_ok = r.lhs <= r.norm_finite;
  r.chain_ok = r.upper_ok && r.equality_ok && r.lower_ok;
  r.counting_bound = std::pow(static_cast<double>(n), -4.0);
  r.counting_ok = r.mu_edge >= r.counting_bound;
  r.c1_estimate = r.lhs / std::pow(r.t, 2.0 + alpha);
  return r;
}

}  // namespace heisenspec
