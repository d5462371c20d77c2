#include <gtest/gtest.h>

#include <random>

#include "lagstab/errors.hpp"
#include "lagstab/poincare.hpp"

namespace lagstab {
namespace {

const XiParam kXi2 = XiParam::parse("1/4,-1/4");
const XiParam kXi3 = XiParam::parse("1/5,1/7,-12/35");

std::vector<std::int64_t> even_coeffs(const PowerSeriesZ& f, int count) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < count; ++i) out.push_back(f.coeff(2 * i));
  return out;
}

// Oracle: partitions of k into parts of size at most m.
std::int64_t partitions(int k, int m) {
  if (k == 0) return 1;
  if (m == 0) return 0;
  std::int64_t total = 0;
  for (int part = 1; part <= std::min(k, m); ++part) total += partitions(k - part, part);
  return total;
}

TEST(PowerSeries, Truncate) {
  const PowerSeriesZ f({1, 0, 1, 0, 1}, 4);
  EXPECT_EQ(truncate(f, 2), PowerSeriesZ({1, 0, 1}, 2));
  EXPECT_EQ(truncate(f, 0), PowerSeriesZ({1}, 0));
  EXPECT_THROW(truncate(f, 5), OrderExceeded);
  EXPECT_THROW(f.coeff(5), OrderExceeded);
  const PowerSeriesZ g({2, -1, 3, 0, 5, 7}, 5);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(truncate(f * g, n), truncate(truncate(f, n) * truncate(g, n), n));
  EXPECT_EQ((f + g).order(), 4);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(PowerSeriesZ({1, 0, -2}, 3).to_string(), "1 - 2t^2 + O(t^4)");
  EXPECT_THROW(PowerSeriesZ({INT64_MAX}, 0) + PowerSeriesZ({1}, 0), Error);
}

TEST(PowerSeries, Bott) {
  EXPECT_EQ(even_coeffs(bott_series(2, 10), 6), (std::vector<std::int64_t>{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(bott_series(2, 10).coeff(3), 0);
  EXPECT_EQ(even_coeffs(bott_series(3, 8), 5), (std::vector<std::int64_t>{1, 1, 2, 2, 3}));
  for (int d = 2; d <= 5; ++d) {
    const auto b = bott_series(d, 60);
    for (int k = 0; 2 * k <= 60; ++k) EXPECT_EQ(b.coeff(2 * k), partitions(k, d - 1));
  }
  EXPECT_THROW(bott_series(1, 4), InvalidArgument);
}

TEST(PowerSeries, Quotient) {
  EXPECT_EQ(even_coeffs(quotient_series(2, 8), 4), (std::vector<std::int64_t>{1, 2, 3, 4}));
  EXPECT_EQ(quotient_series(3, 4).coeff(2), 3);
  EXPECT_EQ(quotient_series(4, 4).coeff(0), 1);
}

TEST(PowerSeries, QuotientIdentityToOrder200) {
  for (int d = 2; d <= 4; ++d) {
    PowerSeriesZ lhs = quotient_series(d, 200);
    PowerSeriesZ rhs = bott_series(d, 200);
    for (int i = 1; i < d; ++i) rhs = rhs * PowerSeriesZ::geometric(2, 200);
    EXPECT_TRUE((lhs - rhs).is_zero());
    // Multiplying back by (1 - t^2)^{d-1} recovers Bott's series.
    for (int i = 1; i < d; ++i) lhs = lhs * PowerSeriesZ({1, 0, -1}, 200);
    EXPECT_EQ(lhs, bott_series(d, 200));
  }
}

TEST(Cells, Polynomials) {
  EXPECT_EQ(cells_polynomial({2, 1}), PowerSeriesZ({1, 0, 1, 0, 1}, 4));
  EXPECT_EQ(cells_polynomial({2, 2}), PowerSeriesZ({1, 0, 1, 0, 1, 0, 1, 0, 1}, 8));
  EXPECT_EQ(dim_shell({2, 1}), 2);
  EXPECT_EQ(codim_bound({2, 1}), 1);
  EXPECT_EQ(dim_shell({3, 2}), 12);
  EXPECT_EQ(codim_bound({3, 2}), 4);
  for (const ShellSpec s : {ShellSpec{2, 1}, ShellSpec{2, 2}, ShellSpec{3, 1}, ShellSpec{3, 2}, ShellSpec{4, 1}}) {
    const auto c = cells_polynomial(s);
    EXPECT_NE(c.coeff(2 * dim_shell(s)), 0);
    EXPECT_EQ(c.coeff(0), 1);
  }
}

// Frozen census counts from the subspace oracle.
TEST(Cells, MatchCensus) {
  struct Case {
    ShellSpec shell;
    long q;
    long count;
  };
  for (const auto& c : {Case{{2, 1}, 2, 7}, Case{{2, 1}, 3, 13}, Case{{2, 1}, 5, 31}, Case{{2, 2}, 2, 31},
                        Case{{2, 2}, 3, 121}, Case{{3, 1}, 2, 155}}) {
    EXPECT_EQ(cells_polynomial(c.shell).evaluate_even(c.q), c.count);
    EXPECT_EQ(static_cast<long>(enumerate_shell(c.shell, PrimeField(static_cast<std::uint32_t>(c.q)),
                                                [](const Lattice&) {})),
              c.count);
  }
}

TEST(Interpolation, RecoversRandomPolynomials) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coeff(-20, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const int deg = trial % 6;
    std::vector<Rational> poly;
    for (int i = 0; i <= deg; ++i) poly.emplace_back(coeff(rng));
    std::vector<std::pair<long, Rational>> pts;
    for (long x : {2L, 3L, 5L, 7L, 11L, 13L, 17L}) {
      Rational v = 0, power = 1;
      for (const auto& c : poly) {
        v += c * power;
        power *= x;
      }
      pts.emplace_back(x, v);
    }
    auto got = lagrange_interpolate(pts);
    poly.resize(got.size(), 0);
    EXPECT_EQ(got, poly);
  }
  EXPECT_THROW(lagrange_interpolate({{2, 1}, {2, 3}}), InvalidArgument);
  EXPECT_EQ(polynomial_degree({1, 0, 0}), 0);
  EXPECT_EQ(polynomial_degree({0}), -1);
}

TEST(Count, RankTwoShellOne) {
  const auto rep = count_points({2, 1}, {2, 3, 5}, kXi2);
  ASSERT_EQ(rep.counts.size(), 3u);
  const std::vector<long> totals{7, 13, 31}, stable{3, 8, 24}, quotient{3, 4, 6};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rep.counts[i].total, totals[i]);
    EXPECT_EQ(rep.counts[i].stable, stable[i]);
    EXPECT_EQ(rep.counts[i].quotient, quotient[i]);
  }
  ASSERT_TRUE(rep.quotient_poly);
  EXPECT_EQ(*rep.quotient_poly, (std::vector<Rational>{1, 1, 0}));
  ASSERT_TRUE(rep.total_poly);
  EXPECT_EQ(*rep.total_poly, (std::vector<Rational>{1, 1, 1}));
  EXPECT_THROW(count_points({2, 1}, {2, 2}, kXi2), InvalidArgument);
  EXPECT_THROW(count_points({2, 1}, {4}, kXi2), InvalidArgument);
  EXPECT_THROW(count_points({2, 1}, {2}, XiParam::parse("1/2,-1/2")), NonGenericXi);
}

TEST(Count, DivisibilityRankThree) {
  const auto rep = count_points({3, 1}, {2, 3}, kXi3);
  for (const auto& c : rep.counts) {
    const long unit = static_cast<long>(c.p) - 1;
    EXPECT_EQ(c.quotient * unit * unit, c.stable);
  }
}

TEST(Compare, RankTwoShellOne) {
  const auto rep = compare_report({2, 1}, {2, 3, 5}, kXi2);
  EXPECT_EQ(rep.window, 0);
  EXPECT_TRUE(rep.window_matches);
  EXPECT_EQ(rep.first_divergence, 2);
  EXPECT_EQ(rep.series.front(), 1);
  EXPECT_EQ(rep.bott_agreement_degree, 4);
  EXPECT_THROW(compare_report({2, 1}, {2}, kXi2), InsufficientPrimes);
}

TEST(Compare, RankTwoShellTwo) {
  const auto rep = compare_report({2, 2}, {2, 3, 5, 7}, kXi2);
  EXPECT_EQ(rep.window, 2);
  EXPECT_TRUE(rep.window_matches);
  EXPECT_EQ(rep.quotient_poly[0], 1);
  EXPECT_EQ(rep.quotient_poly[1], 2);
  EXPECT_EQ(rep.series[0], 1);
  EXPECT_EQ(rep.series[1], 2);
  EXPECT_FALSE(rep.bott_agreement_degree);
}

TEST(Growth, NonstableDegree) {
  const auto r1 = nonstable_growth_check({2, 1}, {2, 3, 5}, kXi2);
  EXPECT_EQ(r1.nonstable_poly, (std::vector<Rational>{2, 1, 0}));
  EXPECT_EQ(r1.degree, 1);
  EXPECT_EQ(r1.bound, 1);
  EXPECT_TRUE(r1.holds);
  const auto r2 = nonstable_growth_check({2, 2}, {2, 3, 5, 7}, kXi2);
  EXPECT_LE(r2.degree, 2);
  EXPECT_TRUE(r2.holds);
  EXPECT_THROW(nonstable_growth_check({2, 2}, {2, 3, 5}, kXi2), InsufficientPrimes);
}

}  // namespace
}  // namespace lagstab
