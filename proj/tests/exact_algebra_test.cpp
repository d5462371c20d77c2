#include <gtest/gtest.h>

#include <random>

#include "lagstab/errors.hpp"
#include "lagstab/exact_algebra.hpp"
#include "test_support.hpp"

namespace lagstab {
namespace {

using testing::eps;
using testing::matrix;
using testing::poly;

const PrimeField F2{2};

TEST(Val, Examples) {
  EXPECT_EQ(val(eps(F2, 1)), 1);
  EXPECT_EQ(val(LaurentPoly(F2)), std::nullopt);
  EXPECT_EQ(val(poly(F2, {{-1, 1}, {0, 1}, {1, 1}})), -1);
}

TEST(Val, MultiplicativeOnRandomPolys) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PrimeField f(p);
    for (int i = 0; i < 300; ++i) {
      auto a = testing::random_poly(f, rng, -5, 5, 4);
      auto b = testing::random_poly(f, rng, -5, 5, 4);
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(*val(a * b), *val(a) + *val(b));
    }
  }
}

TEST(DetVal, Examples) {
  EXPECT_EQ(det_val(LaurentMatrix::diagonal_powers(F2, {1, -1})), 0);
  EXPECT_EQ(det_val(LaurentMatrix::identity(F2, 4)), 0);
  EXPECT_EQ(det_val(testing::stable_example()), 0);
  EXPECT_EQ(det_val(LaurentMatrix::diagonal_powers(F2, {2, 3, -1})), 4);
}

TEST(DetVal, SingularThrows) {
  auto m = matrix(F2, {{eps(F2, 1), eps(F2, 2)}, {eps(F2, 0), eps(F2, 1)}});
  EXPECT_THROW(det_val(m), SingularMatrix);
  EXPECT_THROW(det_val(LaurentMatrix(F2, 2)), SingularMatrix);
}

TEST(DetVal, AgreesWithTwoByTwoExpansion) {
  std::mt19937_64 rng(11);
  PrimeField f(3);
  for (int i = 0; i < 200; ++i) {
    auto m = testing::random_nonsingular(f, 2, rng);
    auto det = m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    EXPECT_EQ(det_val(m), det.valuation());
  }
}

TEST(DetVal, InvariantUnderColumnOperationsOverO) {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int i = 0; i < 60; ++i) {
      const int d = 2 + i % 3;
      auto m = testing::random_nonsingular(f, d, rng);
      const int base = det_val(m);
      // Unit of O times a column.
      auto unit = LaurentPoly::constant(f, 1) + testing::random_poly(f, rng, 1, 3, 2);
      auto scaled = m;
      for (int r = 0; r < d; ++r) scaled.at(r, 0) = scaled.at(r, 0) * unit;
      EXPECT_EQ(det_val(scaled), base);
      // Column 1 += c * column 0 with c in O.
      auto c = testing::random_poly(f, rng, 0, 3, 2);
      auto sheared = m;
      for (int r = 0; r < d; ++r) sheared.at(r, 1) += c * m.at(r, 0);
      EXPECT_EQ(det_val(sheared), base);
    }
  }
}

TEST(ColumnReduce, Examples) {
  auto swap = matrix(F2, {{LaurentPoly(F2), eps(F2, 0)}, {eps(F2, 0), LaurentPoly(F2)}});
  EXPECT_EQ(column_reduce_over_o(swap), LaurentMatrix::identity(F2, 2));
  auto diag = LaurentMatrix::diagonal_powers(F2, {1, -1});
  EXPECT_EQ(column_reduce_over_o(diag), diag);
  auto h = hermite_over_o(F2, 2, testing::stable_example().columns(),
                          containment_precision(testing::stable_example()));
  EXPECT_EQ(h.pivots, (std::vector<int>{1, -1}));
  EXPECT_EQ(h.basis, testing::stable_example());
}

TEST(ColumnReduce, ReducesEntriesAbovePivot) {
  // span(e1, eps^-1 e1 + eps^-1 e2) with e1 generator: entry eps^-1 above the
  // second pivot must be reduced modulo eps^0, i.e. stays; eps^2 e1 part drops.
  auto m = matrix(F2, {{eps(F2, 0), poly(F2, {{-1, 1}, {2, 1}})}, {LaurentPoly(F2), eps(F2, -1)}});
  auto c = column_reduce_over_o(m);
  EXPECT_EQ(c.at(0, 1), eps(F2, -1));
  EXPECT_EQ(c.at(0, 0), eps(F2, 0));
}

bool is_canonical_shape(const LaurentMatrix& b) {
  const int d = b.dim();
  for (int c = 0; c < d; ++c) {
    if (!b.at(c, c).is_monomial() || b.at(c, c).lowest_coeff() != 1) return false;
    const int a = b.at(c, c).valuation();
    (void)a;
    for (int r = c + 1; r < d; ++r) {
      if (!b.at(r, c).is_zero()) return false;
    }
    for (int r = 0; r < c; ++r) {
      const auto& e = b.at(r, c);
      if (!e.is_zero() && e.top_exponent() >= b.at(r, r).valuation()) return false;
    }
  }
  return true;
}

TEST(ColumnReduce, RandomPropertiesAgainstCramerOracle) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int i = 0; i < 80; ++i) {
      const int d = 1 + i % 4;
      auto m = testing::random_nonsingular(f, d, rng);
      auto c = column_reduce_over_o(m);
      EXPECT_TRUE(is_canonical_shape(c));
      EXPECT_TRUE(testing::same_span_cramer(m, c));
      EXPECT_EQ(column_reduce_over_o(c), c);
      int sum = 0;
      for (int k = 0; k < d; ++k) sum += c.at(k, k).valuation();
      EXPECT_EQ(sum, det_val(m));
    }
  }
}

TEST(ColumnReduce, UniqueAcrossGeneratorsOfTheSameSpan) {
  std::mt19937_64 rng(19);
  PrimeField f(3);
  for (int i = 0; i < 60; ++i) {
    const int d = 2 + i % 3;
    auto m = testing::random_nonsingular(f, d, rng);
    // Right-multiply by a random element of GL_d(O): unipotent upper times
    // unit diagonal.
    LaurentMatrix g = LaurentMatrix::identity(f, d);
    for (int r = 0; r < d; ++r) {
      for (int c = r + 1; c < d; ++c) g.at(r, c) = testing::random_poly(f, rng, 0, 3, 2);
      g.at(r, r) = LaurentPoly::constant(f, 1 + r % 2) + testing::random_poly(f, rng, 1, 2, 1);
    }
    EXPECT_EQ(column_reduce_over_o(m * g), column_reduce_over_o(m));
  }
}

TEST(KernelSaturation, Examples) {
  auto id = LaurentMatrix::identity(F2, 3);
  auto k1 = kernel_saturation(id, {0});
  ASSERT_EQ(k1.size(), 2u);
  EXPECT_EQ(k1[0][0], LaurentPoly(F2));
  EXPECT_EQ(k1[1][0], LaurentPoly(F2));

  auto diag = LaurentMatrix::diagonal_powers(F2, {1, -1});
  auto k2 = kernel_saturation(diag, {1});
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_EQ(k2[0][1], LaurentPoly(F2));
  EXPECT_EQ(k2[0][0], eps(F2, 0));

  auto k3 = kernel_saturation(testing::stable_example(), {1});
  ASSERT_EQ(k3.size(), 1u);
  EXPECT_EQ(k3[0][1], LaurentPoly(F2));
  EXPECT_EQ(k3[0][0], eps(F2, 0));
}

TEST(KernelSaturation, SolutionsAndSaturation) {
  std::mt19937_64 rng(23);
  PrimeField f(2);
  for (int i = 0; i < 60; ++i) {
    const int d = 2 + i % 3;
    auto m = testing::random_nonsingular(f, d, rng);
    std::vector<int> rows;
    for (int r = 0; r < d; ++r) {
      if (rng() % 2) rows.push_back(r);
    }
    if (static_cast<int>(rows.size()) == d) rows.pop_back();
    auto ker = kernel_saturation(m, rows);
    ASSERT_EQ(ker.size(), static_cast<std::size_t>(d) - rows.size());
    for (const auto& c : ker) {
      for (int r : rows) {
        LaurentPoly acc(f);
        for (int j = 0; j < d; ++j) acc += m.at(r, j) * c[static_cast<std::size_t>(j)];
        EXPECT_TRUE(acc.is_zero());
      }
    }
    // Saturation: the kernel basis has a maximal minor that is a unit.
    if (ker.empty()) continue;
    const std::size_t k = ker.size();
    fp::Mat rows_mod_eps;
    for (const auto& c : ker) {
      fp::Vec v;
      for (const auto& e : c) v.push_back(e.coeff_at(0));
      rows_mod_eps.push_back(v);
    }
    EXPECT_EQ(fp::rank(f, rows_mod_eps), k);
  }
}

TEST(PrimeFieldOps, RrefAndNullspace) {
  PrimeField f(5);
  fp::Mat a = {{1, 2, 3}, {0, 1, 1}};
  auto ns = fp::nullspace(f, a, 3);
  ASSERT_EQ(ns.size(), 1u);
  for (const auto& row : a) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < 3; ++j) acc = f.add(acc, f.mul(row[j], ns[0][j]));
    EXPECT_EQ(acc, 0u);
  }
  EXPECT_EQ(fp::det(f, {{1, 2}, {3, 4}}), f.reduce(-2));
  EXPECT_THROW(PrimeField(4), InvalidArgument);
}

}  // namespace
}  // namespace lagstab
