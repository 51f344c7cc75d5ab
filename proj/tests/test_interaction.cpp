#include <gtest/gtest.h>

#include "latfold/interaction.hpp"

using namespace latfold;

TEST(SpeciesMatrix, MirrorsTriangle) {
  const auto m = SpeciesMatrix::parse(",A,B,C\nA,-1.0,-2.0,-3.0\nB,,-4.0,-5.0\nC,,,-6.0\n");
  EXPECT_DOUBLE_EQ(m.at('A', 'C'), -3.0);
  EXPECT_DOUBLE_EQ(m.at('C', 'A'), -3.0);
  EXPECT_DOUBLE_EQ(m.at('B', 'B'), -4.0);
  EXPECT_TRUE(m.has('B'));
  EXPECT_FALSE(m.has('Z'));
  EXPECT_THROW(m.at('A', 'Z'), std::out_of_range);
}

TEST(SpeciesMatrix, RejectsAsymmetry) {
  EXPECT_THROW(SpeciesMatrix::parse(",A,B\nA,-1.0,-2.0\nB,-3.0,-1.0\n"), std::invalid_argument);
  EXPECT_THROW(SpeciesMatrix::parse(",A,B\nA,-1.0\n"), std::invalid_argument);
}

TEST(SpeciesMatrix, BundledMiyazawaJernigan) {
  const auto mj = SpeciesMatrix::load(default_mj_path());
  EXPECT_EQ(mj.codes().size(), 20u);
  EXPECT_DOUBLE_EQ(mj.at('A', 'F'), mj.at('F', 'A'));
  EXPECT_DOUBLE_EQ(mj.at('A', 'F'), -4.81);
  EXPECT_DOUBLE_EQ(mj.at('C', 'C'), -5.44);
  EXPECT_DOUBLE_EQ(mj.at('K', 'C'), -1.95);
}

TEST(ContactMap, ParsesRows) {
  const auto rows = parse_contact_map("i,j,l,epsilon\n# helix\n1,6,1,-1.5\n2s,7,1,-0.5\n1,5,2,-0.25\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].a, (BeadId{2, true}));
  EXPECT_EQ(rows[2].order, 2);
  EXPECT_DOUBLE_EQ(rows[0].epsilon, -1.5);
  EXPECT_THROW(parse_contact_map("1,6,3,-1\n"), std::invalid_argument);
  EXPECT_THROW(parse_contact_map("1,6,1\n"), std::invalid_argument);
}

TEST(InteractionModel, OverrideWinsOverMatrix) {
  const auto pep = Peptide::parse("APRLRFY");
  InteractionModel m(1);
  m.set_matrix(1, SpeciesMatrix::load(default_mj_path()));
  const double base = m.epsilon(pep, {1, false}, {6, false}, 1);
  m.set_override({1, false}, {6, false}, 1, -9.0);
  EXPECT_DOUBLE_EQ(m.epsilon(pep, {1, false}, {6, false}, 1), -9.0);
  EXPECT_DOUBLE_EQ(m.epsilon(pep, {6, false}, {1, false}, 1), -9.0);
  EXPECT_NE(base, -9.0);
  EXPECT_DOUBLE_EQ(m.epsilon(pep, {1, false}, {5, false}, 2), 0.0);
}
