#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "latfold/lattice.hpp"
#include "reference.hpp"

using namespace latfold;

namespace {

TurnSequence main_turns(std::vector<int> t) {
  TurnSequence s;
  s.side.assign(t.size() + 1, -1);
  s.main = std::move(t);
  return s;
}

std::vector<std::string> contact_labels(const RegisterLayout& l) {
  std::vector<std::string> out;
  for (const auto& c : l.contacts()) out.push_back(c.label());
  return out;
}

}  // namespace

TEST(Layout, AprlrfyDenseWithSaving) {
  const auto l = build_layout(Peptide::parse("APRLRFY"), EncodingScheme::dense(), 1, true);
  EXPECT_EQ(l.n_conf(), 7);
  EXPECT_EQ(l.n_int(), 2);
  EXPECT_EQ(l.n_qubits(), 9);
  EXPECT_EQ(contact_labels(l), (std::vector<std::string>{"q1_1,6", "q1_2,7"}));
}

TEST(Layout, AprlrfyDenseWithoutSaving) {
  const auto l = build_layout(Peptide::parse("APRLRFY"), EncodingScheme::dense(), 1, false);
  EXPECT_EQ(l.n_conf(), 8);
  EXPECT_EQ(l.n_qubits(), 10);
}

TEST(Layout, AprlrfySparse) {
  const auto l = build_layout(Peptide::parse("APRLRFY"), EncodingScheme::sparse(), 1, false);
  EXPECT_EQ(l.n_conf(), 16);
  EXPECT_EQ(l.n_qubits(), 18);
}

TEST(Layout, AngiotensinContactQubits) {
  const auto l = build_layout(Peptide::parse("DRVYVHPFHL"), EncodingScheme::dense(), 1, true);
  EXPECT_EQ(l.n_conf(), 13);
  EXPECT_EQ(l.n_int(), 9);
  EXPECT_EQ(l.n_qubits(), 22);
  const std::vector<std::string> expected{"q1_1,6", "q1_1,8", "q1_1,10", "q1_2,7", "q1_2,9",
                                          "q1_3,8", "q1_3,10", "q1_4,9", "q1_5,10"};
  EXPECT_EQ(contact_labels(l), expected);
  for (int k = 0; k < l.n_int(); ++k) EXPECT_EQ(l.contacts()[k].index, 13 + k);
}

TEST(Layout, SecondOrderClasses) {
  const auto l = build_layout(Peptide::parse("APRLRF"), EncodingScheme::dense(), 2, false);
  const std::vector<std::string> expected{"q1_1,6", "q2_1,5[3,3]", "q2_1,5[3,5]", "q2_1,5[5,3]", "q2_2,6[3]", "q2_2,6[5]"};
  EXPECT_EQ(contact_labels(l), expected);
}

TEST(Layout, RejectsInvalidRequests) {
  EXPECT_THROW(build_layout(Peptide::parse("APR"), EncodingScheme::dense(), 1, false), std::invalid_argument);
  EXPECT_THROW(build_layout(Peptide::parse("APRLRFY"), EncodingScheme::dense(), 3, false), std::invalid_argument);
  EXPECT_THROW(build_layout(Peptide::parse("APRLRFY"), EncodingScheme::sparse(), 1, true), std::invalid_argument);
  EXPECT_THROW(build_layout(Peptide::parse("AP[R]LRFY"), EncodingScheme::dense(), 1, true), std::invalid_argument);
}

TEST(Layout, AdmissiblePairs) {
  const auto p = Peptide::parse("APRLRFYA");
  EXPECT_TRUE(admissible_pair(p, {1, false}, {6, false}, 1));
  EXPECT_FALSE(admissible_pair(p, {1, false}, {4, false}, 1));
  EXPECT_FALSE(admissible_pair(p, {1, false}, {7, false}, 1));
  EXPECT_TRUE(admissible_pair(p, {1, false}, {5, false}, 2));
  EXPECT_FALSE(admissible_pair(p, {1, false}, {6, false}, 2));
}

TEST(TurnIndicator, DenseBits) {
  const std::uint8_t b00[] = {0, 0}, b01[] = {0, 1}, b10[] = {1, 0}, b11[] = {1, 1};
  EXPECT_EQ(turn_indicator(0, b00, Encoding::kDense), 1);
  for (int a = 1; a < 4; ++a) EXPECT_EQ(turn_indicator(a, b00, Encoding::kDense), 0);
  EXPECT_EQ(turn_indicator(1, b01, Encoding::kDense), 1);
  EXPECT_EQ(turn_indicator(2, b10, Encoding::kDense), 1);
  EXPECT_EQ(turn_indicator(3, b11, Encoding::kDense), 1);
  for (const auto* bits : {b00, b01, b10, b11}) {
    int total = 0;
    for (int a = 0; a < 4; ++a) total += turn_indicator(a, std::span<const std::uint8_t>(bits, 2), Encoding::kDense);
    EXPECT_EQ(total, 1);
  }
}

TEST(TurnIndicator, SparseBits) {
  const std::uint8_t b[] = {0, 1, 0, 0};
  EXPECT_EQ(turn_indicator(1, b, Encoding::kSparse), 1);
  EXPECT_EQ(turn_indicator(0, b, Encoding::kSparse), 0);
  EXPECT_EQ(turn_indicator(2, b, Encoding::kSparse), 0);
  EXPECT_EQ(turn_indicator(3, b, Encoding::kSparse), 0);
}

TEST(Codec, RoundTripOverTurnSpace) {
  for (auto scheme : {EncodingScheme::dense(), EncodingScheme::sparse()}) {
    const auto l = build_layout(Peptide::parse("APRLRFY"), scheme, 1, false);
    const TurnSpace space(l);
    EXPECT_EQ(space.size(), 4u * 4 * 4 * 4);
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      const auto t = space.at(i);
      EXPECT_EQ(t.main[0], 1);
      EXPECT_EQ(t.main[1], 0);
      const Bits bits = encode(t, l);
      ASSERT_EQ(static_cast<int>(bits.size()), l.n_conf());
      const auto back = decode(bits, l);
      EXPECT_TRUE(back.valid);
      EXPECT_EQ(back.turns, t);
    }
  }
}

TEST(Codec, SavingRestrictsTurnThree) {
  const auto l = build_layout(Peptide::parse("APRLRFY"), EncodingScheme::dense(), 1, true);
  const TurnSpace space(l);
  EXPECT_EQ(space.size(), 2u * 4 * 4 * 4);
  std::set<int> third;
  for (std::uint64_t i = 0; i < space.size(); ++i) third.insert(space.at(i).main[2]);
  EXPECT_EQ(third, (std::set<int>{1, 3}));
  EXPECT_THROW(encode(main_turns({1, 0, 2, 0, 1, 2}), l), std::invalid_argument);
}

TEST(Codec, SparseFlagsNonOneHot) {
  const auto l = build_layout(Peptide::parse("APRLRF"), EncodingScheme::sparse(), 1, false);
  Bits bits(l.n_conf(), 0);
  bits[0] = 1;
  bits[1] = 1;
  const auto d = decode(bits, l);
  EXPECT_FALSE(d.valid);
  ASSERT_FALSE(d.invalid.empty());
  EXPECT_EQ(d.invalid.front().host, 3);
}

TEST(Geometry, BondLengthsAndAngle) {
  const auto c = grow(main_turns({1, 0}), Peptide::parse("AAA"));
  EXPECT_EQ(squared_distance(c, {1, false}, {2, false}), 3);
  EXPECT_EQ(squared_distance(c, {2, false}, {3, false}), 3);
  EXPECT_DOUBLE_EQ(euclidean_distance(c, {1, false}, {2, false}), 1.0);
  const auto& a = c.position({1, false});
  const auto& b = c.position({2, false});
  const auto& d = c.position({3, false});
  const double dot = (a.x - b.x) * (d.x - b.x) + (a.y - b.y) * (d.y - b.y) + (a.z - b.z) * (d.z - b.z);
  EXPECT_NEAR(std::acos(dot / 3.0) * 180.0 / M_PI, 109.47, 0.01);
}

TEST(Geometry, BacktrackOverlaps) {
  const auto c = grow(main_turns({1, 0, 0}), Peptide::parse("AAAA"));
  EXPECT_EQ(squared_distance(c, {2, false}, {4, false}), 0);
  EXPECT_FALSE(self_avoiding(c));
}

TEST(Geometry, MatchesReferenceWalker) {
  const auto pep = Peptide::parse("AAAAAAA");
  int checked = 0;
  reference::walks(7, {}, false, [&](const reference::Walk& w) {
    const auto c = grow(main_turns(w.turns), pep);
    for (int k = 0; k < 7; ++k) {
      const auto& p = c.position({k + 1, false});
      EXPECT_EQ((reference::Point{p.x, p.y, p.z}), w.beads[k]);
    }
    ++checked;
  });
  EXPECT_EQ(checked, 4 * 4 * 4 * 4);
}

TEST(Geometry, SquaredDistancesFollowSublatticeParity) {
  const auto pep = Peptide::parse("AAAAAAA");
  reference::walks(7, {}, false, [&](const reference::Walk& w) {
    const auto c = grow(main_turns(w.turns), pep);
    for (int i = 1; i <= 7; ++i) {
      for (int j = i + 1; j <= 7; ++j) {
        const int d2 = squared_distance(c, {i, false}, {j, false});
        EXPECT_EQ(d2 % 8, (j - i) % 2 == 0 ? 0 : 3);
      }
    }
  });
}

TEST(Geometry, DistanceIndexGivesEuclideanDistance) {
  const auto pep = Peptide::parse("AAAAAAA");
  const TurnSpace space(build_layout(pep, EncodingScheme::dense(), 1, false));
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    const auto c = grow(space.at(i), pep);
    for (int a = 1; a <= 7; ++a) {
      for (int b = a + 1; b <= 7; ++b) {
        const auto& ca = c.turn_count({a, false});
        const auto& cb = c.turn_count({b, false});
        int s = 0;
        for (int k = 0; k < 4; ++k) s += cb[k] - ca[k];
        EXPECT_NEAR(distance_from_index(distance_index(c, {a, false}, {b, false}), s),
                    euclidean_distance(c, {a, false}, {b, false}), 1e-12);
      }
    }
  }
  EXPECT_DOUBLE_EQ(distance_from_index(1, 1), 1.0);
}

TEST(Geometry, SideChainSitsOnHostSublatticeOpposite) {
  const auto pep = Peptide::parse("AP[R]LRF");
  TurnSequence t = main_turns({1, 0, 2, 3});
  t.side[1] = chirality_side_turn(1, 0, 2);
  const auto c = grow(t, pep);
  EXPECT_EQ(squared_distance(c, {2, false}, {2, true}), 3);
  EXPECT_EQ(squared_distance(c, {2, true}, {1, false}), 8);
  EXPECT_EQ(squared_distance(c, {2, true}, {3, false}), 8);
  EXPECT_TRUE(self_avoiding(c));
  EXPECT_TRUE(chiral(t));
  t.side[1] = chirality_side_turn(0, 1, 2);
  EXPECT_FALSE(chiral(t));
}

TEST(Chirality, TableAndTranspose) {
  EXPECT_EQ(chirality_side_turn(1, 2, 2), 0);
  EXPECT_EQ(chirality_side_turn(2, 1, 3), 0);
  for (int p = 0; p < 4; ++p) {
    EXPECT_EQ(chirality_side_turn(p, p, 2), -1);
    for (int n = 0; n < 4; ++n) {
      if (p == n) continue;
      const int even = chirality_side_turn(p, n, 4);
      const int odd = chirality_side_turn(p, n, 5);
      EXPECT_NE(even, p);
      EXPECT_NE(even, n);
      EXPECT_NE(odd, p);
      EXPECT_NE(odd, n);
      EXPECT_NE(even, odd);
      EXPECT_EQ(odd, chirality_side_turn(n, p, 4));
    }
  }
}
