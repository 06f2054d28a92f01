#include <gtest/gtest.h>

#include "hklab/errors.hpp"
#include "hklab/ks_orbits.hpp"
#include "oracles.hpp"

using namespace hklab;

TEST(Partitions, CountsMatchPentagonalRecurrence) {
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(static_cast<long long>(partitions(n).size()), oracle::partition_count(n)) << n;
}

TEST(Partitions, OrderAndShape) {
  const auto p3 = partitions(3);
  ASSERT_EQ(p3.size(), 3u);
  EXPECT_EQ(p3[0], (Partition{3}));
  EXPECT_EQ(p3[1], (Partition{2, 1}));
  EXPECT_EQ(p3[2], (Partition{1, 1, 1}));
  for (const auto& p : partitions(7)) {
    EXPECT_EQ(partition_size(p), 7);
    EXPECT_TRUE(std::is_sorted(p.rbegin(), p.rend()));
  }
}

TEST(Dominance, AgreesWithPartialSums) {
  for (int n = 1; n <= 7; ++n) {
    const auto ps = partitions(n);
    for (const auto& a : ps)
      for (const auto& b : ps) EXPECT_EQ(dominance_leq(a, b), oracle::dominated(a, b));
  }
  EXPECT_TRUE(dominance_leq({2, 2}, {3, 1}));
  EXPECT_FALSE(dominance_leq({3, 3}, {4, 1, 1}) && dominance_leq({4, 1, 1}, {3, 3}));
  EXPECT_THROW(dominance_leq({2}, {1, 1, 1}), Error);
}

TEST(Dominance, PosetAxioms) {
  for (int n = 1; n <= 7; ++n) EXPECT_TRUE(dominance_poset(n).is_partial_order()) << n;
}

TEST(Dominance, IncomparablePairAtSix) {
  EXPECT_FALSE(dominance_leq({3, 1, 1, 1}, {2, 2, 2}));
  EXPECT_FALSE(dominance_leq({2, 2, 2}, {3, 1, 1, 1}));
}

TEST(Dominance, CoversAtFourFormAChain) {
  const OrbitPoset p = dominance_poset(4);
  const auto cov = p.covers();
  EXPECT_EQ(cov.size(), 4u);
  for (const auto& [i, j] : cov) EXPECT_EQ(j + 1, i);  // labels are descending
}

TEST(KsTable, TwoByTwo) {
  const KsTable t = ks_table_gl(2);
  ASSERT_EQ(t.pairs.size(), 2u);
  EXPECT_EQ(t.pairs[0].real_label, (Partition{2}));
  EXPECT_EQ(t.pairs[1].symmetric_label, (Partition{1, 1}));
  const std::string text = ks_table_text(t);
  EXPECT_NE(text.find("(2)\t(2)"), std::string::npos);
  EXPECT_NE(text.find("(1,1) < (2)"), std::string::npos);
  const std::string dot = ks_table_dot(t);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("real1 -> real0"), std::string::npos);
}

TEST(KsTable, PairingIsOrderIsomorphism) {
  for (int n = 1; n <= 6; ++n) {
    const KsTable t = ks_table_gl(n);
    for (std::size_t i = 0; i < t.pairs.size(); ++i)
      for (std::size_t j = 0; j < t.pairs.size(); ++j)
        EXPECT_EQ(t.real_side.leq[i][j], t.symmetric_side.leq[i][j]);
  }
}

TEST(Nilpotents, FromPartitionHasThatType) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& lam : partitions(n)) {
      const JordanType J = orbit_label(nilpotent_from_partition(lam), Tolerances{});
      ASSERT_EQ(J.blocks.size(), 1u);
      EXPECT_EQ(J.blocks.begin()->second, lam);
    }
}

TEST(KsCrosscheck, TracedNilpotentsMatchTheirLabels) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& c : ks_crosscheck(ks_table_gl(n), 11, 16, Tolerances{})) {
      EXPECT_TRUE(c.matches);
      EXPECT_LE(c.symmetry_residual, 1e-6);
    }
}
