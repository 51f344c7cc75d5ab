#include <gtest/gtest.h>

#include <stdexcept>

#include "latfold/peptide.hpp"

using namespace latfold;

TEST(Peptide, ParsesMainChain) {
  const auto p = Peptide::parse("APRLRFY");
  EXPECT_EQ(p.length(), 7);
  EXPECT_EQ(p.main_chain(), "APRLRFY");
  EXPECT_FALSE(p.has_any_side_chain());
  EXPECT_EQ(p.bead_count(), 7);
  EXPECT_EQ(p.species({3, false}), 'R');
  EXPECT_EQ(p.to_string(), "APRLRFY");
}

TEST(Peptide, ParsesSideChains) {
  const auto p = Peptide::parse("AP[R]LR[F]Y");
  EXPECT_EQ(p.length(), 5);
  EXPECT_TRUE(p.has_side_chain(2));
  EXPECT_TRUE(p.has_side_chain(4));
  EXPECT_FALSE(p.has_side_chain(3));
  EXPECT_EQ(p.side_chain_count(), 2);
  EXPECT_EQ(p.species({2, true}), 'R');
  EXPECT_EQ(p.species({4, true}), 'F');
  EXPECT_EQ(p.to_string(), "AP[R]LR[F]Y");
  const std::vector<BeadId> order{{1, false}, {2, false}, {2, true}, {3, false}, {4, false}, {4, true}, {5, false}};
  EXPECT_EQ(p.beads(), order);
  EXPECT_EQ(p.bead_index({4, true}), 5);
}

TEST(Peptide, RejectsBadInput) {
  EXPECT_THROW(Peptide::parse(""), std::invalid_argument);
  EXPECT_THROW(Peptide::parse("[A]PR"), std::invalid_argument);
  EXPECT_THROW(Peptide::parse("APR[L]"), std::invalid_argument);
  EXPECT_THROW(Peptide::parse("AP[RL"), std::invalid_argument);
  EXPECT_THROW(Peptide::parse("AP1"), std::invalid_argument);
}

TEST(Peptide, NeighboursAndSeparation) {
  const auto p = Peptide::parse("APR[L]LRF");
  const std::vector<BeadId> n3{{2, false}, {3, true}, {4, false}};
  EXPECT_EQ(p.neighbors({3, false}), n3);
  EXPECT_EQ(p.neighbors({3, true}), (std::vector<BeadId>{BeadId{3, false}}));
  EXPECT_EQ(p.neighbors({1, false}), (std::vector<BeadId>{BeadId{2, false}}));
  EXPECT_EQ(p.bond_separation({1, false}, {6, false}), 5);
  EXPECT_EQ(p.bond_separation({1, false}, {3, true}), 3);
  EXPECT_EQ(p.bond_separation({3, true}, {6, false}), 4);
}

TEST(Peptide, BeadLabels) {
  EXPECT_EQ(to_string(BeadId{7, false}), "7");
  EXPECT_EQ(to_string(BeadId{4, true}), "4s");
  EXPECT_EQ(parse_bead("4s"), (BeadId{4, true}));
  EXPECT_EQ(parse_bead("12"), (BeadId{12, false}));
  EXPECT_THROW(parse_bead("x"), std::invalid_argument);
  EXPECT_THROW(parse_bead("0"), std::invalid_argument);
}

TEST(Peptide, SublatticeAlternates) {
  EXPECT_EQ(sublattice({1, false}), Sublattice::kB);
  EXPECT_EQ(sublattice({2, false}), Sublattice::kA);
  EXPECT_EQ(sublattice({2, true}), Sublattice::kB);
  EXPECT_EQ(bond_sign(2), 1);
  EXPECT_EQ(bond_sign(3), -1);
}
