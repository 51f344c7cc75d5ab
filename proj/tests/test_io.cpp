#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "latfold/io.hpp"
#include "latfold/run_config.hpp"

using namespace latfold;

namespace fs = std::filesystem;

TEST(RunConfig, RejectsUnknownKeys) {
  EXPECT_THROW(parse_run_config(json{{"sequence", "APRLRFY"}, {"sequnce", 1}}, "."), std::invalid_argument);
  EXPECT_THROW(parse_run_config(json{{"sequence", "APRLRFY"}, {"penalties", {{"lambda_x", 1.0}}}}, "."),
               std::invalid_argument);
  EXPECT_ANY_THROW(parse_run_config(json{{"sequence", "APRLRFY"}, {"alpha", "high"}}, "."));
  EXPECT_ANY_THROW(parse_run_config(json{{"seed", 3}}, "."));
}

TEST(RunConfig, RelativePathsFollowTheFile) {
  const auto cfg = parse_run_config(json{{"sequence", "APRLRFY"}, {"output_dir", "runs/a"}, {"alpha", 0.1}}, "/tmp/base");
  EXPECT_EQ(cfg.output_dir, fs::path("/tmp/base/runs/a"));
  EXPECT_DOUBLE_EQ(cfg.alpha, 0.1);
  const auto again = parse_run_config(to_json(cfg), "/elsewhere");
  EXPECT_EQ(again.output_dir, cfg.output_dir);
  EXPECT_EQ(again.sequence, "APRLRFY");
  EXPECT_DOUBLE_EQ(again.alpha, 0.1);
}

TEST(RunConfig, BundledConfigsLoad) {
  for (const char* name : {"aprlrfy.json", "angiotensin.json", "helix.json", "sheet.json"}) {
    const auto cfg = load_run_config(fs::path(LATFOLD_CONFIG_DIR) / name);
    EXPECT_FALSE(cfg.sequence.empty()) << name;
    EXPECT_NO_THROW(make_instance(cfg)) << name;
  }
}

TEST(Pauli, JsonRoundTrip) {
  PauliHamiltonian h(5);
  h.add({}, 1.25);
  h.add({0, 3}, -0.5);
  h.add({4}, 1.0 / 3.0);
  const auto back = pauli_from_json(json::parse(to_json(h).dump()));
  EXPECT_EQ(back.n_qubits(), 5);
  EXPECT_EQ(back.size(), 3u);
  EXPECT_DOUBLE_EQ(back.coeff({4}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(back.coeff({0, 3}), -0.5);
  EXPECT_NE(pauli_text(h).find("Z0 Z3"), std::string::npos);
}

TEST(Spectrum, EntryRoundTrip) {
  SpectrumEntry e;
  e.energy = -4.81;
  e.degeneracy = 2;
  e.contacts = {{{1, false}, {6, false}, 1}};
  e.contact_bits = {1, 0};
  e.turns.main = {1, 0, 1, 2, 3, 0};
  e.turns.side = {-1, -1, -1, -1, -1, -1, -1};
  const auto back = spectrum_entry_from_json(json::parse(to_json(e).dump()));
  EXPECT_EQ(back.energy, e.energy);
  EXPECT_EQ(back.degeneracy, 2u);
  EXPECT_EQ(back.contacts, e.contacts);
  EXPECT_EQ(back.contact_bits, e.contact_bits);
  EXPECT_EQ(back.turns.main, e.turns.main);
  EXPECT_EQ(back.turns.side, e.turns.side);
  EXPECT_EQ(bits_string(parse_bits("0110")), "0110");
  EXPECT_ANY_THROW(parse_bits("01x"));
}

TEST(Trajectory, CsvRoundTrip) {
  std::vector<GenerationLog> rows{{0, 1.5, -2.25, 0.0, 0.125}, {1, 1.0 / 3.0, -3.0, 0.01, 0.5}};
  const auto back = parse_trajectory_csv(trajectory_csv(rows));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].generation, 1);
  EXPECT_DOUBLE_EQ(back[1].mean_cvar, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(back[0].max_p0, 0.125);
  EXPECT_THROW(parse_trajectory_csv("a,b\n"), std::runtime_error);
  EXPECT_THROW(parse_trajectory_csv("generation,x\n1,2\n"), std::runtime_error);
}

TEST(Histogram, JsonRoundTrip) {
  std::map<std::string, HistogramBin> h{{"10", {7, 0.7, -4.81, 3}}, {"00", {3, 0.3, 0.0, 1}}};
  const auto back = histogram_from_json(json::parse(histogram_to_json(h).dump()));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.at("10").count, 7u);
  EXPECT_DOUBLE_EQ(back.at("10").min_energy, -4.81);
  EXPECT_EQ(back.at("00").individuals, 1u);
}

TEST(Xyz, BondLengthOne) {
  const auto pep = Peptide::parse("APRL[K]RFY");
  TurnSequence t;
  t.main = {1, 0, 1, 2, 0, 1};
  t.side = std::vector<int>(7, -1);
  t.side[3] = 0;
  const auto text = xyz_text(grow(t, pep), "test");
  std::istringstream in(text);
  int count = 0;
  std::string comment;
  in >> count;
  std::getline(in, comment);
  std::getline(in, comment);
  EXPECT_EQ(count, 8);
  EXPECT_EQ(comment, "test");
  std::vector<std::array<double, 3>> p;
  std::vector<char> species;
  char s;
  double x, y, z;
  while (in >> s >> x >> y >> z) {
    species.push_back(s);
    p.push_back({x, y, z});
  }
  ASSERT_EQ(p.size(), 8u);
  EXPECT_EQ(species.front(), 'A');
  auto dist = [&p](std::size_t a, std::size_t b) {
    return std::hypot(p[a][0] - p[b][0], p[a][1] - p[b][1], p[a][2] - p[b][2]);
  };
  // The side bead follows its host.
  const std::vector<std::size_t> chain{0, 1, 2, 3, 5, 6, 7};
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) EXPECT_NEAR(dist(chain[k], chain[k + 1]), 1.0, 1e-5);
  EXPECT_NEAR(dist(3, 4), 1.0, 1e-5);
  EXPECT_EQ(species[4], 'K');
}
