#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <regex>

#include "heisenspec/butterfly.hpp"
#include "heisenspec/charpoly.hpp"
#include "oracles.hpp"

using namespace heisenspec;

TEST(Bands, ThreeOneClosedForm) {
  const auto b = bands(3, 1);
  ASSERT_EQ(b.size(), 3u);
  const double r6 = std::sqrt(6.0), r3 = std::sqrt(3.0);
  EXPECT_NEAR(b[0].lower, -r6, 1e-9);
  EXPECT_NEAR(b[0].upper, -2.0, 1e-9);
  EXPECT_NEAR(b[1].lower, 1.0 - r3, 1e-9);
  EXPECT_NEAR(b[1].upper, 0.0, 1e-9);
  EXPECT_NEAR(b[2].lower, r6, 1e-9);
  EXPECT_NEAR(b[2].upper, 1.0 + r3, 1e-9);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(b[static_cast<std::size_t>(i)].index, i + 1);
}

TEST(Bands, MiddleBandsShareZeroWhenFourDividesN) {
  for (int n = 4; n <= 60; n += 4)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto b = bands(n, q);
      EXPECT_NEAR(b[static_cast<std::size_t>(n / 2 - 1)].upper, 0.0, 1e-9) << n << "/" << q;
      EXPECT_NEAR(b[static_cast<std::size_t>(n / 2)].lower, 0.0, 1e-9) << n << "/" << q;
    }
}

// n = 2 mod 4 at offset 0: P(0) = -8 lies outside [-4, 0], so 0 sits in a gap
// between the middle bands, which mirror each other.
TEST(Bands, MiddleGapAroundZeroWhenNIsTwoModFour) {
  for (int n = 6; n <= 58; n += 4)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      EXPECT_NEAR(charpoly_eval(n, q, 0.0), -8.0, 1e-7) << n << "/" << q;
      const auto b = bands(n, q);
      const auto& lo = b[static_cast<std::size_t>(n / 2 - 1)];
      const auto& hi = b[static_cast<std::size_t>(n / 2)];
      EXPECT_LT(lo.upper, 0.0);
      EXPECT_GT(hi.lower, 0.0);
      EXPECT_NEAR(lo.upper, -hi.lower, 1e-9);
    }
}

TEST(Bands, EdgesAreRootsOfPAndPPlusFour) {
  for (int n = 3; n <= 22; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto e = band_edges(n, q);
      ASSERT_EQ(e.periodic.size(), static_cast<std::size_t>(n));
      ASSERT_EQ(e.antiperiodic.size(), static_cast<std::size_t>(n));
      for (double x : e.periodic) {
        const auto d = discriminant(n, q, x);
        ASSERT_LE(std::abs(d.full_value() - 2.0), 1e-7 * std::max(1.0, std::abs(d.full_slope())));
      }
      for (double x : e.antiperiodic) {
        const auto d = discriminant(n, q, x);
        ASSERT_LE(std::abs(d.full_value() + 2.0), 1e-7 * std::max(1.0, std::abs(d.full_slope())));
      }
    }
}

// Independent route: sign changes of P + 4 on a fine grid.  Its roots are
// simple for odd n, so bisection alone recovers every antiperiodic edge.
TEST(Bands, BisectionOracleOnPPlusFour) {
  for (int n = 3; n <= 21; n += 2)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto roots = oracle::bisection_roots([&](double x) { return charpoly_eval(n, q, x) + 4.0; }, -4.5, 4.5, 40000);
      const auto e = band_edges(n, q);
      ASSERT_EQ(roots.size(), static_cast<std::size_t>(n)) << n << "/" << q;
      for (std::size_t i = 0; i < roots.size(); ++i) ASSERT_NEAR(roots[i], e.antiperiodic[i], 1e-9);
    }
}

TEST(Bands, InvariantsUpToSixty) {
  for (int n = 3; n <= 60; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto b = bands(n, q);
      ASSERT_EQ(b.size(), static_cast<std::size_t>(n));
      double width = 0.0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        ASSERT_LE(b[i].lower, b[i].upper);
        ASSERT_GE(b[i].lower, -4.0);
        ASSERT_LE(b[i].upper, 4.0);
        if (i > 0) { ASSERT_LE(b[i - 1].upper, b[i].lower + 1e-12); }
        width += b[i].upper - b[i].lower;
      }
      ASSERT_GT(width, 0.0);
      ASSERT_LE(width, 8.0);
      for (double lam : eigenvalues(HarperMatrix(n, q))) {
        const bool inside = std::any_of(b.begin(), b.end(),
                                        [&](const Band& x) { return lam >= x.lower - 1e-9 && lam <= x.upper + 1e-9; });
        ASSERT_TRUE(inside) << n << "/" << q << " " << lam;
      }
    }
}

// Inside a band P + 2 runs between -2 and 2; in a gap |P + 2| > 2.
TEST(Bands, PolynomialLevelInsideAndBetweenBands) {
  for (int n : {5, 7, 8, 11})
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto b = bands(n, q);
      for (std::size_t i = 0; i < b.size(); ++i) {
        const double mid = 0.5 * (b[i].lower + b[i].upper);
        const double p = charpoly_eval(n, q, mid);
        EXPECT_GE(p, -4.0 - 1e-9);
        EXPECT_LE(p, 1e-9);
        if (i + 1 < b.size() && b[i + 1].lower - b[i].upper > 1e-6) {
          const double gap = charpoly_eval(n, q, 0.5 * (b[i].upper + b[i + 1].lower));
          EXPECT_TRUE(gap > 0.0 || gap < -4.0) << n << "/" << q << " gap " << i;
        }
      }
    }
}

TEST(Bands, SymmetricInQ) {
  for (int n = 3; n <= 40; ++n)
    for (int q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      const auto a = bands(n, q), b = bands(n, n - q);
      for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_NEAR(a[i].lower, b[i].lower, 1e-10);
        ASSERT_NEAR(a[i].upper, b[i].upper, 1e-10);
      }
    }
}

TEST(Bands, TopEdgeContainsLambda) {
  for (int n : {5, 11, 31, 53}) {
    const auto b = bands(n, 1);
    EXPECT_GE(b.back().upper, max_eigenvalue(HarperMatrix(n, 1)) - 1e-9);
  }
}

TEST(Bands, Preconditions) {
  EXPECT_THROW(bands(2, 1), PreconditionError);
  EXPECT_THROW(bands(6, 2), PreconditionError);
  EXPECT_THROW(bands(5, 0), PreconditionError);
  EXPECT_THROW(bands(5, 5), PreconditionError);
}

TEST(Sweep, CountsAndOrder) {
  const auto s3 = butterfly_sweep(3);
  EXPECT_EQ(s3.size(), 6u);
  const auto s = butterfly_sweep(12);
  std::size_t expected = 0;
  for (int n = 3; n <= 12; ++n)
    for (int q = 1; q < n; ++q)
      if (std::gcd(n, q) == 1) expected += static_cast<std::size_t>(n);
  EXPECT_EQ(s.size(), expected);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end(), [](const Band& a, const Band& b) {
    return std::tie(a.n, a.q, a.index) < std::tie(b.n, b.q, b.index);
  }));
  EXPECT_THROW(butterfly_sweep(2), PreconditionError);
}

TEST(Svg, OneLinePerBand) {
  const auto count_lines = [](const std::string& svg) {
    std::size_t c = 0;
    for (std::size_t p = svg.find("<line"); p != std::string::npos; p = svg.find("<line", p + 1)) ++c;
    return c;
  };
  EXPECT_EQ(count_lines(render_svg(butterfly_sweep(3), 400, 300)), 6u);
  const auto b50 = butterfly_sweep(50);
  const auto svg = render_svg(b50, 1200, 900);
  EXPECT_EQ(count_lines(svg), b50.size());
  EXPECT_EQ(svg, render_svg(b50, 1200, 900));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_THROW(render_svg({}, 100, 100), PreconditionError);
  EXPECT_THROW(render_svg(b50, 0, 100), PreconditionError);
  EXPECT_THROW(render_svg(b50, 100, 0), PreconditionError);
}
