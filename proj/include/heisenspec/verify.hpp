#pragma once

// Cross-module invariant suite behind `heisenspec verify`.
//
// Each check yields one line.  A few checks are known to fail at desk scale
// (asymptotic bounds that need much larger n); they are listed as expected
// failures and print XFAIL.  Anything else that fails, or an expected failure
// that passes, makes the run fail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heisenspec/butterfly.hpp"
#include "heisenspec/charpoly.hpp"
#include "heisenspec/eigensolver.hpp"
#include "heisenspec/group.hpp"
#include "heisenspec/representations.hpp"
#include "heisenspec/spectral_measure.hpp"

namespace heisenspec {

enum class CheckStatus { Pass, Fail, ExpectedFail, UnexpectedPass };

inline const char* status_label(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::ExpectedFail: return "XFAIL";
    case CheckStatus::UnexpectedPass: return "XPASS";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
};

struct VerifyOptions {
  bool full = false;
  // Added to the lowest eigenvalue of the first matrix in the root-consistency
  // check.  Mutation hook for testing the suite itself.
  double eigenvalue_perturbation = 0.0;
  int n0_threshold = kDefaultLemmaThreshold;
  int desk_guard = kDefaultDeskGuard;
};

namespace detail {

struct Outcome {
  bool ok = false;
  std::string detail;
};

inline std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

using Check = std::function<Outcome(const VerifyOptions&)>;

struct CheckSpec {
  std::string name;
  Check run;
  bool expected_fail = false;
};

inline std::vector<CheckSpec> verify_checks() {
  std::vector<CheckSpec> c;

  // group
  c.push_back({"group: associativity and inverses on random triples", [](const VerifyOptions&) {
                 std::mt19937_64 rng(20240601);
                 std::uniform_int_distribution<std::int64_t> d(-50, 50);
                 for (Modulus m : {Modulus{}, Modulus{7}, Modulus{101}})
                   for (int i = 0; i < 1000; ++i) {
                     GroupElement g(d(rng), d(rng), d(rng), m), h(d(rng), d(rng), d(rng), m),
                         k(d(rng), d(rng), d(rng), m);
                     if ((g * h) * k != g * (h * k)) return Outcome{false, "associativity"};
                     if (!(g * g.inverse()).is_identity() || !(g.inverse() * g).is_identity())
                       return Outcome{false, "inverse"};
                   }
                 return Outcome{true, "3000 triples"};
               }});
  c.push_back({"group: commutator of x and y is z", [](const VerifyOptions&) {
                 const auto x = GroupElement::x(), y = GroupElement::y();
                 return Outcome{x * y * x.inverse() * y.inverse() == GroupElement::z(), ""};
               }});
  c.push_back({"group: walk total is 4^k", [](const VerifyOptions& o) {
                 const int kmax = o.full ? 30 : 20;
                 InfiniteWalk<std::uint64_t> w;
                 for (int k = 1; k <= kmax; ++k) {
                   w.advance();
                   if (w.total() != detail::pow4(k)) return Outcome{false, "k = " + std::to_string(k)};
                 }
                 return Outcome{true, "k <= " + std::to_string(kmax)};
               }});
  c.push_back({"group: walk support inside |a|,|b| <= k, |c| <= k^2/2", [](const VerifyOptions& o) {
                 const int kmax = o.full ? 14 : 10;
                 WalkState<std::uint64_t> s;
                 for (int k = 1; k <= kmax; ++k) {
                   s = s.next();
                   for (const auto& [g, n] : s.counts())
                     if (std::abs(g.a()) > k || std::abs(g.b()) > k || 2 * std::abs(g.c()) > k * k)
                       return Outcome{false, "k = " + std::to_string(k)};
                 }
                 return Outcome{true, "k <= " + std::to_string(kmax)};
               }});
  c.push_back({"group: odd return moments vanish", [](const VerifyOptions& o) {
                 const int kmax = o.full ? 29 : 21;
                 const auto m = return_moments(kmax);
                 for (int k = 1; k <= kmax; k += 2)
                   if (m[static_cast<std::size_t>(k)] != 0) return Outcome{false, "k = " + std::to_string(k)};
                 return Outcome{true, "k <= " + std::to_string(kmax)};
               }});
  c.push_back({"group: moment(2) = 1/4 and moment(4) = 7/64", [](const VerifyOptions&) {
                 const auto m = return_moments(4);
                 return Outcome{m[2] == Rational(1, 4) && m[4] == Rational(7, 64),
                                rational_string(m[2]) + ", " + rational_string(m[4])};
               }});
  c.push_back({"group: moments on H and H_{n^2+1} agree for k <= n", [](const VerifyOptions&) {
                 for (int n = 1; n <= 8; ++n)
                   if (!verify_moment_transfer(n)) return Outcome{false, "n = " + std::to_string(n)};
                 return Outcome{true, "n = 1..8"};
               }});
  c.push_back({"group: modulus 5 walk exceeds H at k = 5", [](const VerifyOptions&) {
                 return Outcome{return_moment(5, 5) > return_moment(5), rational_string(return_moment(5, 5))};
               }});

  // representations
  c.push_back({"representations: sum of dim^2 equals n^3", [](const VerifyOptions&) {
                 for (int n = 2; n <= 100; ++n)
                   if (is_prime(n)) {
                     const auto t = irrep_table(n);
                     if (t.dimension_square_sum() != static_cast<std::int64_t>(n) * n * n)
                       return Outcome{false, "n = " + std::to_string(n)};
                   }
                 return Outcome{true, "primes <= 100"};
               }});
  c.push_back({"representations: Harper trace is zero", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n = 3; n <= 60; ++n)
                   for (int q = 1; q < n; ++q) worst = std::max(worst, std::abs(HarperMatrix(n, q).trace()));
                 return Outcome{worst <= 1e-12, "max |trace| " + num(worst)};
               }});
  c.push_back({"representations: commutator image is a scalar of modulus 1", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n : {3, 5, 7, 11})
                   for (int q = 1; q < n; ++q) {
                     const auto z = commutator_image(n, q);
                     const auto w = std::polar(1.0, -2.0 * std::numbers::pi * q / n);
                     for (std::size_t i = 0; i < z.size(); ++i)
                       for (std::size_t j = 0; j < z.size(); ++j)
                         worst = std::max(worst, std::abs(z(i, j) - (i == j ? w : 0.0)));
                   }
                 return Outcome{worst <= 1e-12, "max deviation " + num(worst)};
               }});

  // eigensolver
  c.push_back({"eigensolver: spectra of q and n-q coincide", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n = 3; n <= 50; ++n) {
                   if (!is_prime(n)) continue;
                   for (int q = 1; q < n; ++q) {
                     const auto a = eigenvalues(HarperMatrix(n, q));
                     const auto b = eigenvalues(HarperMatrix(n, n - q));
                     for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
                   }
                 }
                 return Outcome{worst <= 1e-10, "max deviation " + num(worst)};
               }});
  c.push_back({"eigensolver: residual, trace and [-4, 4] containment", [](const VerifyOptions& o) {
                 double res = 0.0, tr = 0.0, out = 0.0;
                 for (int n : o.full ? std::vector<int>{3, 17, 64, 199, 400} : std::vector<int>{3, 17, 64})
                   for (int q : {1, 2, n - 1}) {
                     const auto s = full_spectrum(HarperMatrix(n, q));
                     res = std::max(res, s.residual);
                     tr = std::max(tr, std::abs(std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0)) / n);
                     out = std::max({out, -4.0 - s.eigenvalues.front(), s.eigenvalues.back() - 4.0});
                   }
                 return Outcome{res <= 1e-10 && tr <= 1e-9 && out <= 0.0,
                                "residual " + num(res) + ", |sum|/n " + num(tr)};
               }});
  c.push_back({"eigensolver: path matrices match 2cos(j pi/(m+1))", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int m = 1; m <= 60; ++m) {
                   const auto a = symmetric_eigenvalues(path_matrix(static_cast<std::size_t>(m)));
                   const auto b = path_spectrum(m);
                   for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
                 }
                 return Outcome{worst <= 1e-10, "max deviation " + num(worst)};
               }});
  c.push_back({"eigensolver: power iteration matches the QL top eigenvalue", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n : {3, 53, 101, 199}) {
                   const HarperMatrix h(n, 1);
                   worst = std::max(worst, std::abs(max_eigenvalue(h) - top_eigenvalue(h)));
                 }
                 return Outcome{worst <= 1e-10, "max deviation " + num(worst)};
               }});
  c.push_back({"eigensolver: top eigenvalue is monotone under entrywise order", [](const VerifyOptions&) {
                 std::mt19937_64 rng(7);
                 std::uniform_real_distribution<double> u(0.0, 1.0);
                 for (int trial = 0; trial < 50; ++trial) {
                   const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
                   RealMatrix p(n), q(n);
                   for (std::size_t i = 0; i < n; ++i)
                     for (std::size_t j = i; j < n; ++j) {
                       p(i, j) = p(j, i) = u(rng);
                       q(i, j) = q(j, i) = p(i, j) + u(rng);
                     }
                   if (max_eigenvalue(p) > max_eigenvalue(q) + 1e-12)
                     return Outcome{false, "trial " + std::to_string(trial)};
                 }
                 return Outcome{true, "50 pairs"};
               }});
  c.push_back({"eigensolver: top eigenvalue of T_1 is simple", [](const VerifyOptions&) {
                 double gap = 1e300;
                 for (int n : {3, 5, 53, 101, 199}) {
                   const auto s = eigenvalues(HarperMatrix(n, 1));
                   gap = std::min(gap, s[s.size() - 1] - s[s.size() - 2]);
                 }
                 return Outcome{gap > 0.0, "min gap " + num(gap)};
               }});
  c.push_back({"eigensolver: 4 - 40/n < lambda_n < 4 - 2/n", [](const VerifyOptions& o) {
                 const int hi = o.full ? 499 : 149;
                 int count = 0;
                 for (int n = std::max(53, o.n0_threshold); n <= hi; ++n) {
                   if (!is_prime(n)) continue;
                   const auto r = check_lemma_2_2(n, o.n0_threshold);
                   if (!r.lower_ok || !r.upper_ok) return Outcome{false, "n = " + std::to_string(n)};
                   ++count;
                 }
                 return Outcome{true, std::to_string(count) + " primes up to " + std::to_string(hi)};
               }});
  c.push_back({"eigensolver: mu_n <= 4 - 3/(5n) over all q", [](const VerifyOptions& o) {
                 const int hi = o.full ? 199 : 61;
                 int count = 0;
                 for (int n = std::max(53, o.n0_threshold); n <= hi; ++n) {
                   if (!is_prime(n)) continue;
                   if (!check_lemma_2_3(n, o.n0_threshold).ok) return Outcome{false, "n = " + std::to_string(n)};
                   ++count;
                 }
                 return Outcome{true, std::to_string(count) + " primes up to " + std::to_string(hi)};
               }});

  // charpoly
  c.push_back({"charpoly: matching construction equals the Leibniz determinant", [](const VerifyOptions& o) {
                 const int hi = o.full ? 12 : 9;
                 double worst = 0.0;
                 for (int n = 3; n <= hi; ++n)
                   for (int q = 1; q < n; ++q) {
                     const auto a = charpoly_coeffs(n, q);
                     const auto b = brute_force_charpoly(n, q);
                     for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
                   }
                 return Outcome{worst <= 1e-9, "n <= " + std::to_string(hi) + ", max deviation " + num(worst)};
               }});
  c.push_back({"charpoly: transfer product matches Horner on expanded coefficients", [](const VerifyOptions&) {
                 std::mt19937_64 rng(11);
                 std::uniform_real_distribution<double> u(-5.0, 5.0);
                 double worst = 0.0;
                 for (int n = 3; n <= 40; ++n) {
                   const int q = 1 + n / 3;
                   const auto p = charpoly_coeffs(n, q);
                   for (int i = 0; i < 100; ++i) {
                     const double x = u(rng);
                     // Horner on expanded coefficients cancels; scale by sum |c_i x^i|.
                     double scale = 0.0, xi = 1.0;
                     for (double ci : p) { scale += std::abs(ci) * xi; xi *= std::abs(x); }
                     const double a = charpoly_eval(n, q, x), b = horner(p, x);
                     worst = std::max(worst, std::abs(a - b) / std::max(1.0, scale));
                   }
                 }
                 return Outcome{worst <= 1e-12, "max scaled deviation " + num(worst)};
               }});
  c.push_back({"charpoly: P_{3,1} = x^3 - 6x - 4", [](const VerifyOptions&) {
                 const auto p = charpoly_coeffs(3, 1);
                 const Polynomial want{-4.0, -6.0, 0.0, 1.0};
                 double worst = 0.0;
                 for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(p[i] - want[i]));
                 return Outcome{worst <= 1e-12, ""};
               }});
  c.push_back({"charpoly: P vanishes at every computed eigenvalue", [](const VerifyOptions& o) {
                 bool first = true;
                 for (int n = 3; n <= (o.full ? 31 : 13); ++n) {
                   if (!is_prime(n)) continue;
                   for (int q = 1; q < n; ++q) {
                     auto ev = eigenvalues(HarperMatrix(n, q));
                     if (first) ev.front() += o.eigenvalue_perturbation;
                     first = false;
                     for (double lam : ev) {
                       const auto d = discriminant(n, q, lam);
                       const double p = d.full_value() - 2.0;
                       if (std::abs(p) > 1e-6 * std::max(1.0, std::abs(d.full_slope())))
                         return Outcome{false, "n = " + std::to_string(n) + ", q = " + std::to_string(q) +
                                                   ", x = " + num(lam) + ", P = " + num(p)};
                     }
                   }
                 }
                 return Outcome{true, ""};
               }});

  // butterfly
  c.push_back({"butterfly: bands(3,1) closed form", [](const VerifyOptions&) {
                 const auto b = bands(3, 1);
                 const double r6 = std::sqrt(6.0), r3 = std::sqrt(3.0);
                 const double want[3][2] = {{-r6, -2.0}, {1.0 - r3, 0.0}, {r6, 1.0 + r3}};
                 double worst = 0.0;
                 for (int i = 0; i < 3; ++i)
                   worst = std::max({worst, std::abs(b[static_cast<std::size_t>(i)].lower - want[i][0]),
                                     std::abs(b[static_cast<std::size_t>(i)].upper - want[i][1])});
                 return Outcome{worst <= 1e-9, "max deviation " + num(worst)};
               }});
  // With corner +1 and cosine offset 0, P(0) = 0 when 4 | n and P(0) = -8
  // when n = 2 mod 4, so only the first family has the shared vertex.
  const auto middle_vertex = [](int residue) {
    return [residue](const VerifyOptions&) {
      double worst = 0.0;
      for (int n = 4 + residue; n <= 40; n += 4)
        for (int q = 1; q < n; ++q) {
          if (std::gcd(n, q) != 1) continue;
          const auto b = bands(n, q);
          const auto& lo = b[static_cast<std::size_t>(n / 2 - 1)];
          const auto& hi = b[static_cast<std::size_t>(n / 2)];
          worst = std::max({worst, std::abs(lo.upper), std::abs(hi.lower)});
        }
      return Outcome{worst <= 1e-9, "max |endpoint| " + num(worst)};
    };
  };
  c.push_back({"butterfly: middle bands touch at 0 for n = 0 mod 4", middle_vertex(0)});
  c.push_back({"butterfly: middle bands touch at 0 for n = 2 mod 4", middle_vertex(2), true});
  c.push_back({"butterfly: P(0) = -8 for n = 2 mod 4", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n = 6; n <= 40; n += 4)
                   for (int q = 1; q < n; q += 2)
                     if (std::gcd(n, q) == 1) worst = std::max(worst, std::abs(charpoly_eval(n, q, 0.0) + 8.0));
                 return Outcome{worst <= 1e-9, "max |P(0) + 8| " + num(worst)};
               }});
  c.push_back({"butterfly: eigenvalues lie in the band union", [](const VerifyOptions& o) {
                 for (int n = 3; n <= (o.full ? 60 : 30); ++n)
                   for (int q = 1; q < n; ++q) {
                     if (std::gcd(n, q) != 1) continue;
                     const auto b = bands(n, q);
                     for (double lam : eigenvalues(HarperMatrix(n, q))) {
                       const bool inside = std::any_of(b.begin(), b.end(), [&](const Band& x) {
                         return lam >= x.lower - 1e-9 && lam <= x.upper + 1e-9;
                       });
                       if (!inside) return Outcome{false, "n = " + std::to_string(n) + ", q = " + std::to_string(q)};
                     }
                   }
                 return Outcome{true, ""};
               }});
  c.push_back({"butterfly: band sets for q and n-q agree", [](const VerifyOptions&) {
                 double worst = 0.0;
                 for (int n = 3; n <= 40; ++n)
                   for (int q = 1; q < n; ++q) {
                     if (std::gcd(n, q) != 1) continue;
                     const auto a = bands(n, q), b = bands(n, n - q);
                     for (std::size_t i = 0; i < a.size(); ++i)
                       worst = std::max({worst, std::abs(a[i].lower - b[i].lower), std::abs(a[i].upper - b[i].upper)});
                   }
                 return Outcome{worst <= 1e-10, "max deviation " + num(worst)};
               }});
  c.push_back({"butterfly: total bandwidth in (0, 8]", [](const VerifyOptions&) {
                 for (int n = 3; n <= 60; ++n)
                   for (int q = 1; q < n; ++q) {
                     if (std::gcd(n, q) != 1) continue;
                     double w = 0.0;
                     for (const auto& b : bands(n, q)) w += b.upper - b.lower;
                     if (!(w > 0.0 && w <= 8.0)) return Outcome{false, "n = " + std::to_string(n)};
                   }
                 return Outcome{true, "n <= 60"};
               }});

  // spectral measure
  c.push_back({"measure: mass 1 and mean 0", [](const VerifyOptions& o) {
                 double worst = 0.0;
                 for (int n = 3; n <= (o.full ? 150 : 60); ++n) {
                   if (!is_prime(n)) continue;
                   const auto m = finite_measure(n, o.desk_guard);
                   worst = std::max({worst, std::abs(m.total_weight() - 1.0), std::abs(m.moment(1))});
                 }
                 return Outcome{worst <= 1e-10, "max deviation " + num(worst)};
               }});
  c.push_back({"measure: spectral moments match the walk DP", [](const VerifyOptions& o) {
                 double worst = 0.0;
                 for (int n : {17, 101}) {
                   const auto m = finite_measure(n, o.desk_guard);
                   const auto dp = return_moments(12, n);
                   for (int k = 0; k <= 12; ++k) {
                     const double want = to_double(dp[static_cast<std::size_t>(k)]);
                     const double err = std::abs(m.moment(k) - want);
                     worst = std::max(worst, want == 0.0 ? err : err / want);
                   }
                 }
                 return Outcome{worst <= 1e-10, "max relative deviation " + num(worst)};
               }});
  c.push_back({"measure: one-dimensional edge mass scales like t", [](const VerifyOptions& o) {
                 const auto m = finite_measure(149, o.desk_guard);
                 const double N = 149.0;
                 std::vector<double> ratio;
                 for (double t : {0.04, 0.02, 0.01}) {
                   double mass = 0.0;
                   for (int a = 1; a <= 149; ++a)
                     for (int b = 1; b <= 149; ++b)
                       if (std::abs(laplace_value(149, {a, b}) / 4.0) >= 1.0 - t - kEdgeSlack) mass += 1.0 / (N * N * N);
                   ratio.push_back(mass / t);
                 }
                 const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
                 return Outcome{*hi <= 3.0 * *lo, "mass/t spread " + num(*hi / *lo)};
               }});
  c.push_back({"filter: P(+-1) = 1 and sup |P| <= 1 on [-1, 1]", [](const VerifyOptions&) {
                 for (int n : {16, 32, 64}) {
                   const auto p = filter_profile(cheb_filter(n, 0.5));
                   if (p.at_plus_one != 1.0 || p.at_minus_one != 1.0 || p.sup_abs > 1.0 + 1e-12)
                     return Outcome{false, "n = " + std::to_string(n)};
                 }
                 return Outcome{true, "n = 16, 32, 64"};
               }});
  c.push_back({"filter: normalization decreases in n and tracks 2exp(-sqrt2 n^(a/2))", [](const VerifyOptions&) {
                 double prev = 2.0;
                 for (int n = 4; n <= 256; n += 2) {
                   const auto f = cheb_filter(n, 0.5);
                   if (!(f.normC < prev)) return Outcome{false, "not decreasing at n = " + std::to_string(n)};
                   prev = f.normC;
                   if (n >= 64 && (f.normC > 2.0 * f.asymptotic_normC() || f.normC < 0.5 * f.asymptotic_normC()))
                     return Outcome{false, "asymptotic off at n = " + std::to_string(n)};
                 }
                 return Outcome{true, ""};
               }});
  c.push_back({"filter: c0 >= 0.1 near the edge", [](const VerifyOptions&) {
                 double worst = 1.0;
                 for (int n : {16, 32, 64}) worst = std::min(worst, filter_profile(cheb_filter(n, 0.5)).c0);
                 return Outcome{worst >= 0.1, "min c0 " + num(worst)};
               }});
  c.push_back({"filter: interior sup at n = 64 <= 1e-6",
               [](const VerifyOptions&) {
                 const auto p = filter_profile(cheb_filter(64, 0.5));
                 return Outcome{p.interior_sup <= 1e-6, "sup " + num(p.interior_sup)};
               },
               true});

  const auto cases = [](const VerifyOptions& o) {
    return o.full ? std::vector<std::pair<int, double>>{{8, 0.3}, {8, 0.5}, {10, 0.3}, {10, 0.5}, {12, 0.3}, {12, 0.5}}
                  : std::vector<std::pair<int, double>>{{8, 0.3}, {8, 0.5}};
  };
  c.push_back({"edge mass: c0 mu_N(A_t) <= ||P(Delta_N)||^2", [cases](const VerifyOptions& o) {
                 for (auto [n, a] : cases(o))
                   if (!theorem_4_3_report(n, a, o.desk_guard).lower_ok)
                     return Outcome{false, "n = " + std::to_string(n) + ", alpha = " + num(a)};
                 return Outcome{true, ""};
               }});
  c.push_back({"edge mass: ||P(Delta)||^2 on H equals the finite spectral value", [cases](const VerifyOptions& o) {
                 double worst = 0.0;
                 for (auto [n, a] : cases(o)) {
                   const auto r = theorem_4_3_report(n, a, o.desk_guard);
                   worst = std::max(worst, std::abs(r.norm_infinite - r.norm_finite));
                 }
                 return Outcome{worst <= kNormEqualityTolerance, "max deviation " + num(worst)};
               }});
  c.push_back({"edge mass: ||P(Delta_N)||^2 <= mu_N(A_{t^(1-a)}) + n^-6",
               [cases](const VerifyOptions& o) {
                 for (auto [n, a] : cases(o)) {
                   const auto r = theorem_4_3_report(n, a, o.desk_guard);
                   if (!r.upper_ok)
                     return Outcome{false, "n = " + std::to_string(n) + ": " + num(r.norm_finite) + " > " + num(r.rhs)};
                 }
                 return Outcome{true, ""};
               },
               true});
  c.push_back({"edge mass: mu_N(A_{1/n^2}) >= 1/n^4",
               [cases](const VerifyOptions& o) {
                 for (auto [n, a] : cases(o)) {
                   const auto r = theorem_4_3_report(n, a, o.desk_guard);
                   if (!r.counting_ok)
                     return Outcome{false,
                                    "n = " + std::to_string(n) + ": " + num(r.mu_edge) + " < " + num(r.counting_bound)};
                 }
                 return Outcome{true, ""};
               },
               true});
  return c;
}

}  // namespace detail

inline std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  for (const auto& spec : detail::verify_checks()) {
    detail::Outcome o;
    try {
      o = spec.run(opts);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    CheckStatus s;
    if (spec.expected_fail)
      s = o.ok ? CheckStatus::UnexpectedPass : CheckStatus::ExpectedFail;
    else
      s = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    out.push_back({spec.name, s, o.detail});
  }
  return out;
}

inline bool verify_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) {
    return r.status == CheckStatus::Fail || r.status == CheckStatus::UnexpectedPass;
  });
}

}  // namespace heisenspec
