#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>

#include "latfold/de_optimizer.hpp"

using namespace latfold;

namespace {

std::vector<Individual> population_of(int p, int dim) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  std::vector<Individual> pop(p);
  for (auto& ind : pop) {
    ind.theta.resize(dim);
    for (auto& t : ind.theta) t = u(rng);
  }
  return pop;
}

Evaluation quadratic(std::span<const double> theta, std::uint64_t) {
  Evaluation e;
  for (double t : theta) e.cvar += (t - 1.0) * (t - 1.0);
  return e;
}

}  // namespace

TEST(DifferentialEvolution, DefaultPopulation) {
  EXPECT_EQ(default_population(AnsatzSpec{9, Entangler::kRing, 2}), 90);
  EXPECT_EQ(default_population(AnsatzSpec{22, Entangler::kRing, 2}), 220);
  EXPECT_EQ(DifferentialEvolution({}, 18, quadratic).population_size(), 90);
}

TEST(DifferentialEvolution, WrapAngle) {
  const double two_pi = 2 * std::numbers::pi;
  EXPECT_DOUBLE_EQ(wrap_angle(1.0), 1.0);
  EXPECT_NEAR(wrap_angle(-1.0), two_pi - 1.0, 1e-12);
  EXPECT_NEAR(wrap_angle(two_pi + 0.5), 0.5, 1e-12);
  EXPECT_LT(wrap_angle(two_pi), two_pi);
}

TEST(DifferentialEvolution, NoCrossoverKeepsParentExceptOneGene) {
  const auto pop = population_of(10, 6);
  DEConfig cfg;
  cfg.CR = 0.0;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = propose(2, 5, pop, cfg, rng);
    int changed = 0;
    for (std::size_t j = 0; j < t.size(); ++j) changed += std::abs(t[j] - pop[2].theta[j]) > 1e-12;
    EXPECT_LE(changed, 1);
  }
}

TEST(DifferentialEvolution, DonorFormula) {
  const auto pop = population_of(4, 3);
  DEConfig cfg;
  cfg.CR = 1.0;
  cfg.F = 0.5;
  std::mt19937_64 rng(1);
  // Parent 0 and best 1 leave r1, r2 in {1, 2, 3}; every outcome is one of six donors.
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = propose(0, 1, pop, cfg, rng);
    bool matched = false;
    for (int a = 1; a < 4; ++a) {
      for (int b = 1; b < 4; ++b) {
        if (a == b) continue;
        bool all = true;
        for (int j = 0; j < 3; ++j) {
          const double x = pop[0].theta[j];
          const double d = x + 0.5 * (pop[1].theta[j] - x) + 0.5 * (pop[a].theta[j] - pop[b].theta[j]);
          all = all && std::abs(t[j] - wrap_angle(d)) < 1e-12;
        }
        matched = matched || all;
      }
    }
    EXPECT_TRUE(matched);
  }
}

TEST(DifferentialEvolution, CrossoverRate) {
  const auto pop = population_of(20, 40);
  DEConfig cfg;
  cfg.CR = 0.3;
  std::mt19937_64 rng(8);
  const int trials = 2000;
  double crossed = 0;
  for (int k = 0; k < trials; ++k) {
    const auto t = propose(k % 20, (k + 7) % 20, pop, cfg, rng);
    for (std::size_t j = 0; j < t.size(); ++j) crossed += std::abs(t[j] - pop[k % 20].theta[j]) > 1e-12;
  }
  // j_rand adds one forced gene, crossed with probability 1 instead of CR.
  const double n = trials * 40.0;
  const double expect = 0.3 + 0.7 / 40.0;
  EXPECT_NEAR(crossed / n, expect, 5 * std::sqrt(expect * (1 - expect) / n));
}

TEST(DifferentialEvolution, TiesKeepParent) {
  EXPECT_FALSE(trial_survives(1.0, 1.0));
  EXPECT_TRUE(trial_survives(1.0, 0.5));
  EXPECT_FALSE(trial_survives(-1.0, 0.0));
}

TEST(DifferentialEvolution, RejectsBadSettings) {
  DEConfig cfg;
  cfg.population = 3;
  EXPECT_THROW(DifferentialEvolution(cfg, 4, quadratic), std::invalid_argument);
  cfg.population = 8;
  cfg.F = 0.0;
  EXPECT_THROW(DifferentialEvolution(cfg, 4, quadratic), std::invalid_argument);
  cfg.F = 0.7;
  cfg.CR = 1.5;
  EXPECT_THROW(DifferentialEvolution(cfg, 4, quadratic), std::invalid_argument);
}

TEST(DifferentialEvolution, ConvergesOnQuadratic) {
  DEConfig cfg;
  cfg.population = 20;
  cfg.generations = 150;
  cfg.seed = 12;
  DifferentialEvolution de(cfg, 4, quadratic);
  int calls = 0;
  de.run([&calls](const GenerationLog&) { ++calls; });
  EXPECT_EQ(calls, 151);
  EXPECT_EQ(de.trajectory().size(), 151u);
  EXPECT_LT(de.population()[de.best_index()].fitness, 1e-6);
  for (std::size_t g = 1; g < de.trajectory().size(); ++g) {
    EXPECT_LE(de.trajectory()[g].best_cvar, de.trajectory()[g - 1].best_cvar + 1e-15);
  }
}

TEST(DifferentialEvolution, ReproducibleAcrossThreads) {
  auto noisy = [](std::span<const double> theta, std::uint64_t seed) {
    auto e = quadratic(theta, seed);
    e.cvar += 1e-3 * unit_uniform(mix_seed(seed));
    return e;
  };
  DEConfig cfg;
  cfg.population = 12;
  cfg.generations = 20;
  cfg.seed = 4;
  DifferentialEvolution a(cfg, 5, noisy);
  cfg.threads = 4;
  DifferentialEvolution b(cfg, 5, noisy);
  a.run();
  b.run();
  for (int i = 0; i < 12; ++i) {
    EXPECT_EQ(a.population()[i].theta, b.population()[i].theta);
    EXPECT_EQ(a.population()[i].fitness, b.population()[i].fitness);
  }
  for (const auto& ind : a.population()) EXPECT_LE(ind.best_fitness, ind.fitness);
}

TEST(DifferentialEvolution, ParentsAreRescoredWithFreshSeeds) {
  std::vector<std::uint64_t> seeds;
  auto record = [&seeds](std::span<const double> theta, std::uint64_t seed) {
    seeds.push_back(seed);
    return quadratic(theta, seed);
  };
  DEConfig cfg;
  cfg.population = 5;
  cfg.generations = 2;
  DifferentialEvolution de(cfg, 2, record);
  de.run();
  EXPECT_EQ(seeds.size(), 5u + 2 * 2 * 5u);
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(Fold, HistogramCoversFinalShots) {
  const auto pep = Peptide::parse("APRLRF");
  InteractionModel m(1);
  m.set_matrix(1, SpeciesMatrix::load(default_mj_path()));
  const auto h = assemble(pep, EncodingScheme::dense(), m, {}, false);
  FoldOptions opts;
  opts.de.generations = 3;
  opts.de.population = 8;
  opts.ansatz.entangler = Entangler::kRing;
  const auto r = fold(h, opts);
  EXPECT_EQ(r.population, 8);
  EXPECT_EQ(r.trajectory.size(), 4u);
  EXPECT_LE(r.best_cvar, r.trajectory.front().mean_cvar);
  std::uint64_t total = 0;
  for (const auto& [key, bin] : r.histogram) {
    EXPECT_EQ(key.size(), static_cast<std::size_t>(h.layout.n_int()));
    total += bin.count;
  }
  EXPECT_EQ(total, 8u * 1024u);
  EXPECT_EQ(contact_key(r.best_bitstring, h.layout).size(), static_cast<std::size_t>(h.layout.n_int()));
}
