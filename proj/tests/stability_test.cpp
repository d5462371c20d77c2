#include <gtest/gtest.h>

#include <random>

#include "lagstab/errors.hpp"
#include "lagstab/stability.hpp"
#include "test_support.hpp"

namespace lagstab {
namespace {

const PrimeField F2{2};
const XiParam kXi2 = XiParam::parse("1/4,-1/4");
const XiParam kXi3 = XiParam::parse("1/5,1/7,-12/35");

Lattice stable_lattice() { return lattice_from_matrix(testing::stable_example()); }
Lattice diag_lattice(std::vector<int> a) {
  return lattice_from_matrix(LaurentMatrix::diagonal_powers(F2, a));
}

TEST(HBorel, Examples) {
  auto l0 = standard_lattice(F2, 3);
  for (const auto& tau : all_permutations(3)) EXPECT_EQ(h_borel(l0, tau), (Coweight{0, 0, 0}));
  EXPECT_EQ(h_borel(stable_lattice(), {0, 1}), (Coweight{1, -1}));
  EXPECT_EQ(h_borel(stable_lattice(), {1, 0}), (Coweight{-1, 1}));
  EXPECT_THROW(h_borel(stable_lattice(), {0, 0}), InvalidArgument);
}

// Oracle: canonical form after reordering coordinates along tau has the
// H-vector (read along tau) on its diagonal.
Coweight permuted_pivots(const Lattice& l, const std::vector<int>& tau) {
  const int d = l.dim();
  LaurentMatrix m(l.field(), d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m.at(r, c) = l.basis().at(tau[static_cast<std::size_t>(r)], c);
  }
  auto p = lattice_from_matrix(m);
  Coweight h(static_cast<std::size_t>(d));
  for (int r = 0; r < d; ++r) h[static_cast<std::size_t>(tau[static_cast<std::size_t>(r)])] = p.pivots()[static_cast<std::size_t>(r)];
  return h;
}

TEST(HBorel, AgreesWithPermutedPivotsOnShells) {
  for (auto [d, n, p] : {std::tuple{2, 2, 3u}, std::tuple{3, 1, 2u}}) {
    for (const auto& l : shell_lattices({d, n}, PrimeField(p))) {
      for (const auto& tau : all_permutations(d)) {
        auto h = h_borel(l, tau);
        EXPECT_EQ(h, permuted_pivots(l, tau));
        int sum = 0;
        for (int x : h) sum += x;
        EXPECT_EQ(sum, l.index());
      }
    }
  }
}

TEST(EcVertices, Examples) {
  EXPECT_EQ(ec_vertices(standard_lattice(F2, 2)), (std::vector<Coweight>{{0, 0}}));
  EXPECT_EQ(ec_vertices(diag_lattice({1, -1})), (std::vector<Coweight>{{1, -1}}));
  EXPECT_EQ(ec_vertices(stable_lattice()), (std::vector<Coweight>{{-1, 1}, {1, -1}}));
}

TEST(XiStability, Examples) {
  EXPECT_FALSE(is_xi_stable(standard_lattice(F2, 2), kXi2));
  EXPECT_TRUE(is_xi_stable(stable_lattice(), kXi2));
  auto r = check_xi_stability(diag_lattice({1, -1}), kXi2);
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.failing_subsets, (std::vector<Subset>{{1}}));
  EXPECT_EQ(check_xi_stability(standard_lattice(F2, 2), kXi2).failing_subsets, (std::vector<Subset>{{0}}));
  EXPECT_THROW(is_xi_stable(diag_lattice({1, 1}), kXi2), NonZeroIndex);
  EXPECT_THROW(is_xi_stable(stable_lattice(), XiParam::parse("1/2,-1/2")), NonGenericXi);
  EXPECT_THROW(is_xi_stable(stable_lattice(), kXi3), ShapeMismatch);
}

TEST(XiStability, FaultInjectionFlipsVerdict) {
  set_stability_fault_injection(true);
  const bool flipped = is_xi_stable(stable_lattice(), kXi2);
  set_stability_fault_injection(false);
  EXPECT_FALSE(flipped);
  EXPECT_TRUE(is_xi_stable(stable_lattice(), kXi2));
}

std::vector<XiParam> sample_generic_xis(int d, std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<long> num(-60, 60), den(2, 13);
  std::vector<XiParam> out;
  while (static_cast<int>(out.size()) < count) {
    RationalVector v;
    Rational sum = 0;
    for (int i = 0; i + 1 < d; ++i) {
      Rational x(num(rng), den(rng));
      x.canonicalize();
      v.push_back(x);
      sum += x;
    }
    v.push_back(-sum);
    if (is_generic(v)) out.emplace_back(v);
  }
  return out;
}

TEST(XiStability, SubsetTestEqualsHullMembership) {
  std::mt19937_64 rng(47);
  for (auto [d, n, p] : {std::tuple{2, 1, 3u}, std::tuple{2, 2, 2u}, std::tuple{3, 1, 2u}}) {
    auto xis = sample_generic_xis(d, rng, 6);
    xis.push_back(d == 2 ? kXi2 : kXi3);
    for (const auto& l : shell_lattices({d, n}, PrimeField(p))) {
      for (const auto& xi : xis) EXPECT_EQ(is_xi_stable(l, xi), in_ec_hull(l, xi.entries()));
    }
  }
}

TEST(XiStability, ShiftEquivariance) {
  std::mt19937_64 rng(53);
  const std::vector<Coweight> shifts{{1, -1, 0}, {0, 2, -2}, {-1, -1, 2}};
  for (const auto& l : shell_lattices({3, 1}, F2)) {
    for (const auto& mu : shifts) {
      auto t = translate(l, mu);
      std::vector<Coweight> moved;
      for (auto v : ec_vertices(l)) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += mu[i];
        moved.push_back(v);
      }
      std::sort(moved.begin(), moved.end());
      EXPECT_EQ(ec_vertices(t), moved);
      RationalVector shifted;
      for (std::size_t i = 0; i < 3; ++i) shifted.push_back(kXi3[static_cast<int>(i)] + mu[i]);
      EXPECT_EQ(is_xi_stable(t, XiParam(shifted)), is_xi_stable(l, kXi3));
    }
  }
}

TEST(XiStability, VerdictStableUnderSmallPerturbation) {
  // Gap: distance from the subset sums of xi to the nearest integer.
  Rational gap = 1;
  for (unsigned m = 1; m < 7; ++m) {
    Rational s = 0;
    for (int j = 0; j < 3; ++j) {
      if (m & (1u << j)) s += kXi3[j];
    }
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Rational frac = s - Rational(fl);
    gap = std::min(gap, std::min(frac, Rational(1 - frac)));
  }
  ASSERT_GT(gap, 0);
  const Rational eps = gap / 4;
  const std::vector<RationalVector> dirs{{eps, -eps, 0}, {0, eps, -eps}, {-eps, 0, eps}};
  for (const auto& l : shell_lattices({3, 1}, F2)) {
    const bool base = is_xi_stable(l, kXi3);
    for (const auto& dir : dirs) {
      RationalVector v;
      for (int i = 0; i < 3; ++i) v.push_back(kXi3[i] + dir[static_cast<std::size_t>(i)]);
      EXPECT_EQ(is_xi_stable(l, XiParam(v)), base);
    }
  }
}

TEST(Arthur, Examples) {
  auto a = arthur_difference(standard_lattice(F2, 2), {0, 1}, {1, 0});
  EXPECT_EQ(a.coroot, (Coweight{1, -1}));
  EXPECT_EQ(a.multiplicity, 0);
  auto b = arthur_difference(stable_lattice(), {0, 1}, {1, 0});
  EXPECT_EQ(b.coroot, (Coweight{1, -1}));
  EXPECT_EQ(b.multiplicity, 2);
  EXPECT_THROW(arthur_difference(stable_lattice(), {0, 1}, {0, 1}), NotAdjacent);
  EXPECT_THROW(arthur_difference(standard_lattice(F2, 3), {0, 1, 2}, {2, 1, 0}), NotAdjacent);
}

TEST(Arthur, NonnegativeOnShells) {
  for (auto [d, n, p] : {std::tuple{2, 1, 2u}, std::tuple{2, 2, 3u}, std::tuple{3, 1, 2u}}) {
    for (const auto& l : shell_lattices({d, n}, PrimeField(p))) {
      for (const auto& tau : all_permutations(d)) {
        for (int i = 0; i + 1 < d; ++i) {
          auto tp = tau;
          std::swap(tp[static_cast<std::size_t>(i)], tp[static_cast<std::size_t>(i) + 1]);
          auto r = arthur_difference(l, tau, tp);
          EXPECT_GE(r.multiplicity, 0);
          // Direct subtraction oracle.
          auto h = h_borel(l, tau), hp = h_borel(l, tp);
          EXPECT_EQ(h[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])] -
                        hp[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])],
                    r.multiplicity);
        }
      }
    }
  }
}

}  // namespace
}  // namespace lagstab
