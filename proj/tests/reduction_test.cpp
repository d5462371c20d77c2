#include <gtest/gtest.h>

#include "lagstab/errors.hpp"
#include "lagstab/reduction.hpp"
#include "lagstab/stability.hpp"
#include "test_support.hpp"

namespace lagstab {
namespace {

const PrimeField F2{2};
const XiParam kXi2 = XiParam::parse("1/4,-1/4");
const XiParam kXi3 = XiParam::parse("1/5,1/7,-12/35");
const ParabolicType kB = ParabolicType::parse("1|2", 2);
const ParabolicType kBminus = ParabolicType::parse("2|1", 2);

Lattice stable_lattice() { return lattice_from_matrix(testing::stable_example()); }
Lattice diag_lattice(std::vector<int> a) {
  return lattice_from_matrix(LaurentMatrix::diagonal_powers(F2, a));
}
Lattice line(int a) { return diag_lattice({a}); }

TEST(Retract, Examples) {
  const auto l0 = standard_lattice(F2, 3);
  for (const auto& p : enumerate_parabolics(3)) {
    for (const auto& b : retract(l0, p)) EXPECT_EQ(b, standard_lattice(F2, b.dim()));
  }
  EXPECT_EQ(retract(stable_lattice(), kB), (std::vector<Lattice>{line(1), line(-1)}));
  EXPECT_EQ(h_p(stable_lattice(), kB), (std::vector<long>{1, -1}));
  EXPECT_EQ(retract(stable_lattice(), kBminus), (std::vector<Lattice>{line(1), line(-1)}));
  EXPECT_EQ(h_p(stable_lattice(), ParabolicType::group(2)), (std::vector<long>{0}));
}

// Oracle: block i is generated by the S_i-coordinates of a basis of
// L ∩ F^{S_1 ∪ ... ∪ S_i}; shell lattices contain eps^n O^d, so precision n
// suffices.
TEST(Retract, MatchesIntersectionOracle) {
  const ShellSpec shell{3, 1};
  const auto parabolics = enumerate_parabolics(3);
  enumerate_shell(shell, F2, [&](const Lattice& l) {
    for (const auto& p : parabolics) {
      const auto blocks = retract(l, p);
      Subset prefix;
      long total = 0;
      for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const auto& s = p.blocks[i];
        prefix.insert(prefix.end(), s.begin(), s.end());
        std::sort(prefix.begin(), prefix.end());
        std::vector<LaurentVector> gens;
        for (const auto& v : intersect_coordinate(l, prefix).basis) {
          LaurentVector w;
          for (int j : s) w.push_back(v[static_cast<std::size_t>(j)]);
          gens.push_back(std::move(w));
        }
        const auto expected =
            lattice_from_generators(F2, static_cast<int>(s.size()), std::move(gens), shell.n);
        EXPECT_EQ(blocks[i], expected);
        total += blocks[i].index();
      }
      EXPECT_EQ(total, l.index());
    }
  });
}

TEST(HP, RefinesHBorel) {
  for (const auto& l : shell_lattices({3, 1}, F2)) {
    for (const auto& tau : all_permutations(3)) {
      const auto h = h_p(l, ParabolicType::borel(tau));
      const auto hb = h_borel(l, tau);
      for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(h[i], hb[static_cast<std::size_t>(tau[i])]);
    }
  }
}

TEST(Cylinder, Examples) {
  const auto l0 = standard_lattice(F2, 2);
  EXPECT_TRUE(in_cylinder(l0, kB, kXi2));
  EXPECT_FALSE(in_cylinder(l0, kBminus, kXi2));
  EXPECT_FALSE(in_cylinder(stable_lattice(), kB, kXi2));
  EXPECT_THROW(in_cylinder(l0, kB, XiParam::parse("1/2,-1/2")), NonGenericXi);
  EXPECT_THROW(in_cylinder(diag_lattice({1, 0}), kB, kXi2), NonZeroIndex);
}

TEST(Stratum, Examples) {
  EXPECT_EQ(stratum(standard_lattice(F2, 2), kXi2), StratumTag::of(kB));
  EXPECT_EQ(stratum(stable_lattice(), kXi2), StratumTag::stable());
  EXPECT_EQ(stratum(diag_lattice({1, -1}), kXi2), StratumTag::of(kBminus));
  EXPECT_EQ(StratumTag::stable().to_string(), "stable");
  EXPECT_EQ(StratumTag::of(kBminus).to_string(), "2|1");
}

TEST(BlockStable, ShiftedIndex) {
  // A rank-one block is stable for any parameter.
  EXPECT_TRUE(block_stable(line(3), {Rational(3)}));
  EXPECT_TRUE(block_stable(stable_lattice(), {Rational(1, 4), Rational(-1, 4)}));
  EXPECT_FALSE(block_stable(diag_lattice({1, -1}), {Rational(1, 4), Rational(-1, 4)}));
  EXPECT_THROW(block_stable(line(0), {Rational(0), Rational(0)}), ShapeMismatch);
}

TEST(PartitionAudit, RankTwoCensus) {
  const StratumTag stable = StratumTag::stable(), b = StratumTag::of(kB), bm = StratumTag::of(kBminus);
  for (long q : {2, 3, 5}) {
    const auto rep = partition_audit({2, 1}, PrimeField(static_cast<std::uint32_t>(q)), kXi2);
    EXPECT_EQ(rep.count(stable), q * q - 1);
    EXPECT_EQ(rep.count(b), q + 1);
    EXPECT_EQ(rep.count(bm), 1);
    EXPECT_EQ(rep.total, q * q + q + 1);
    EXPECT_EQ(rep.sector_failures, 0);
    EXPECT_EQ(rep.counts.front().first, stable);
  }
}

TEST(PartitionAudit, ExactPartitionRankThree) {
  const auto rep = partition_audit({3, 1}, F2, kXi3);
  long sum = 0, stable_direct = 0;
  for (const auto& [tag, c] : rep.counts) sum += c;
  for (const auto& l : shell_lattices({3, 1}, F2)) stable_direct += is_xi_stable(l, kXi3) ? 1 : 0;
  EXPECT_EQ(rep.total, 155);
  EXPECT_EQ(sum, 155);
  EXPECT_EQ(rep.count(StratumTag::stable()), stable_direct);
  EXPECT_EQ(rep.sector_failures, 0);
  EXPECT_GT(rep.counts.size(), 2u);
}

TEST(Transition, Nesting) {
  const auto q = ParabolicType::parse("1,2|3", 3);
  const auto b = ParabolicType::parse("1|2|3", 3);
  EXPECT_TRUE(refines(b, q));
  EXPECT_TRUE(refines(q, q));
  EXPECT_FALSE(refines(q, b));
  EXPECT_FALSE(refines(ParabolicType::parse("3|1|2", 3), q));
  EXPECT_TRUE(transition_audit(standard_lattice(F2, 3), q, b));
  EXPECT_THROW(transition_audit(standard_lattice(F2, 3), b, q), NotNested);
}

TEST(Transition, ExhaustiveRankThree) {
  const auto rep = transition_sweep({3, 1}, F2);
  EXPECT_GT(rep.checked, 155);
  EXPECT_EQ(rep.failures, 0);
}

TEST(Unipotent, Examples) {
  const auto l0 = standard_lattice(F2, 2);
  const auto id = LaurentMatrix::identity(F2, 2);
  EXPECT_TRUE(unipotent_audit(l0, kB, id, kXi2));
  auto u = id;
  u.at(0, 1) = testing::eps(F2, -1);
  EXPECT_TRUE(is_unipotent_for(u, kB));
  EXPECT_FALSE(is_unipotent_for(u, kBminus));
  EXPECT_TRUE(unipotent_audit(l0, kB, u, kXi2));
  EXPECT_EQ(stratum(act(u, l0), kXi2), StratumTag::of(kB));
  EXPECT_THROW(unipotent_audit(l0, kBminus, u, kXi2), NotUnipotentForP);
}

TEST(Unipotent, SampledSweeps) {
  const auto r2 = unipotent_sweep({2, 1}, F2, kXi2, 1000, 0);
  EXPECT_EQ(r2.checked, 1000);
  EXPECT_EQ(r2.failures, 0);
  const auto r3 = unipotent_sweep({3, 1}, F2, kXi3, 1000, 7);
  EXPECT_EQ(r3.failures, 0);
  std::mt19937_64 a(5), b(5);
  const auto p = ParabolicType::parse("1|2,3", 3);
  const auto u = random_unipotent(F2, p, 1, a);
  EXPECT_EQ(u, random_unipotent(F2, p, 1, b));
  EXPECT_TRUE(is_unipotent_for(u, p));
}

}  // namespace
}  // namespace lagstab
