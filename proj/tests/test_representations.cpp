#include <gtest/gtest.h>

#include <numbers>

#include "heisenspec/eigensolver.hpp"
#include "heisenspec/representations.hpp"

using namespace heisenspec;

TEST(Primality, SmallCases) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(smallest_factor(91), 7);
  EXPECT_EQ(smallest_factor(311), 311);
}

TEST(IrrepTable, CountsForThreeAndTwo) {
  const auto t3 = irrep_table(3);
  EXPECT_EQ(t3.one_dim.size(), 9u);
  EXPECT_EQ(t3.multi_dim.size(), 2u);
  EXPECT_EQ(t3.dimension_square_sum(), 27);
  const auto t2 = irrep_table(2);
  EXPECT_EQ(t2.one_dim.size(), 4u);
  EXPECT_EQ(t2.multi_dim.size(), 1u);
  EXPECT_EQ(t2.dimension_square_sum(), 8);
}

TEST(IrrepTable, CompletenessForPrimesUpTo100) {
  for (int n = 2; n <= 100; ++n)
    if (is_prime(n)) { EXPECT_EQ(irrep_table(n).dimension_square_sum(), static_cast<std::int64_t>(n) * n * n); }
}

TEST(IrrepTable, RejectsCompositeNamingFactor) {
  try {
    irrep_table(4);
    FAIL() << "expected an error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("divisible by 2"), std::string::npos);
  }
  EXPECT_THROW(irrep_table(15), PreconditionError);
  EXPECT_THROW(irrep_table(1), PreconditionError);
}

TEST(LaplaceValue, AnchorValues) {
  EXPECT_DOUBLE_EQ(laplace_value(7, {7, 7}), 4.0);
  EXPECT_NEAR(laplace_value(4, {1, 3}), 0.0, 1e-15);
  EXPECT_NEAR(laplace_value(3, {1, 2}), -2.0, 1e-15);
  EXPECT_THROW(laplace_value(3, {0, 1}), PreconditionError);
  EXPECT_THROW(laplace_value(3, {1, 4}), PreconditionError);
  for (const auto& e : irrep_table(13).one_dim) {
    EXPECT_LE(e.laplace, 4.0);
    EXPECT_GE(e.laplace, -4.0);
  }
}

TEST(HarperMatrix, ThreeByThree) {
  const auto a = HarperMatrix(3, 1).dense();
  EXPECT_DOUBLE_EQ(a(0, 0), 2.0);
  EXPECT_NEAR(a(1, 1), -1.0, 1e-15);
  EXPECT_NEAR(a(2, 2), -1.0, 1e-15);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) { EXPECT_EQ(a(i, j), 1.0); }
}

TEST(HarperMatrix, FiveByFiveDiagonal) {
  const HarperMatrix h(5, 1);
  for (int j = 0; j < 5; ++j)
    EXPECT_NEAR(h.diag()[static_cast<std::size_t>(j)], 2.0 * std::cos(2.0 * std::numbers::pi * j / 5), 1e-15);
}

TEST(HarperMatrix, StructureAndTrace) {
  for (int n = 3; n <= 40; ++n)
    for (int q = 1; q < n; ++q) {
      const HarperMatrix h(n, q);
      EXPECT_NEAR(h.trace(), 0.0, 1e-12);
      const auto a = h.dense();
      ASSERT_TRUE(a.is_symmetric());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int dist = std::min((i - j + n) % n, (j - i + n) % n);
          if (dist > 1) { ASSERT_EQ(a(i, j), 0.0); }
          if (dist == 1) { ASSERT_EQ(a(i, j), 1.0); }
        }
    }
}

TEST(HarperMatrix, MatchesRepresentationImage) {
  for (int n : {3, 5, 7, 11})
    for (int q = 1; q < n; ++q) {
      const auto img = laplace_image(n, q);
      const auto a = HarperMatrix(n, q).dense();
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
          EXPECT_NEAR(img(i, j).real(), a(i, j), 1e-12);
          EXPECT_NEAR(img(i, j).imag(), 0.0, 1e-12);
        }
    }
}

TEST(HarperMatrix, ApplyMatchesDense) {
  for (double corner : {1.0, -1.0}) {
    const HarperMatrix h(9, 4, corner);
    std::vector<double> v(9), out(9);
    for (int i = 0; i < 9; ++i) v[static_cast<std::size_t>(i)] = 0.3 * i - 1.0;
    h.apply(v, out);
    const auto ref = h.dense().apply(v);
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(out[static_cast<std::size_t>(i)], ref[static_cast<std::size_t>(i)], 1e-14);
  }
}

TEST(HarperMatrix, Preconditions) {
  EXPECT_THROW(HarperMatrix(2, 1), PreconditionError);
  EXPECT_THROW(HarperMatrix(5, 0), PreconditionError);
  EXPECT_THROW(HarperMatrix(5, 5), PreconditionError);
}

TEST(Representations, UnitaryGenerators) {
  for (int n : {3, 5, 7}) {
    const auto r = representation_matrices(n, 2);
    for (const auto* m : {&r.x, &r.y}) {
      const auto p = *m * m->adjoint();
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(std::abs(p(i, j) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
  }
}

// With x u_j = u_{j+1} and y u_j = e^{2πiqj/n} u_j the commutator acts as the
// scalar e^{-2πiq/n}.
TEST(Representations, CommutatorIsScalar) {
  for (int n : {3, 5, 7, 11, 13})
    for (int q = 1; q < n; ++q) {
      const auto z = commutator_image(n, q);
      const auto w = std::polar(1.0, -2.0 * std::numbers::pi * q / n);
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) ASSERT_NEAR(std::abs(z(i, j) - (i == j ? w : 0.0)), 0.0, 1e-12);
    }
}

TEST(Representations, SpectraOfQAndMinusQCoincide) {
  for (int n = 3; n <= 50; ++n) {
    if (!is_prime(n)) continue;
    for (int q = 1; q < n; ++q) {
      const auto a = eigenvalues(HarperMatrix(n, q));
      const auto b = eigenvalues(HarperMatrix(n, n - q));
      for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], b[i], 1e-10);
      EXPECT_GE(a.front(), -4.0);
      EXPECT_LE(a.back(), 4.0);
    }
  }
}
