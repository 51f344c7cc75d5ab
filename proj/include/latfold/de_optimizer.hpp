#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "latfold/cvar.hpp"
#include "latfold/hamiltonian.hpp"

namespace latfold {

struct DEConfig {
  int population = 0;  // 0 selects 5 * layers * n
  double F = 0.7;
  double CR = 0.9;
  int generations = 100;
  std::uint64_t seed = 1;
  int threads = 1;
};

int default_population(const AnsatzSpec& spec);

struct Individual {
  std::vector<double> theta;
  double fitness = 0.0;
  double best_fitness = 0.0;  // running minimum over generations
  double p_ground = 0.0;
  SampleBatch batch;
};

struct GenerationLog {
  int generation = 0;
  double mean_cvar = 0.0;
  double best_cvar = 0.0;
  double mean_p0 = 0.0;
  double max_p0 = 0.0;
};

using Objective = std::function<Evaluation(std::span<const double> theta, std::uint64_t seed)>;

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double x);

/// P uniform angle vectors in [0, 2 pi)^dim, each scored once.
std::vector<Individual> init_population(const DEConfig& cfg, int population, int dim, const Objective& objective);

/// current-to-best/1/bin trial vector for `parent`.
std::vector<double> propose(std::size_t parent, std::size_t best, std::span<const Individual> population,
                            const DEConfig& cfg, std::mt19937_64& rng);

/// Lower fitness wins; ties keep the parent.
bool trial_survives(double parent_fitness, double trial_fitness);

class DifferentialEvolution {
 public:
  DifferentialEvolution(DEConfig cfg, int dim, Objective objective);

  void initialise();
  /// Seeds the population with given angle vectors instead of random ones.
  void initialise(std::vector<std::vector<double>> thetas);
  void step();
  void run(std::function<void(const GenerationLog&)> on_generation = {});

  int generation() const { return generation_; }
  int population_size() const { return population_size_; }
  const DEConfig& config() const { return cfg_; }
  std::span<const Individual> population() const { return population_; }
  const std::vector<GenerationLog>& trajectory() const { return trajectory_; }
  std::size_t best_index() const;

 private:
  void log_generation();
  void evaluate_all(const std::vector<std::vector<double>>& thetas, std::uint64_t stream,
                    std::vector<Evaluation>& out) const;

  DEConfig cfg_;
  int dim_;
  int population_size_;
  Objective objective_;
  std::vector<Individual> population_;
  std::vector<GenerationLog> trajectory_;
  int generation_ = 0;
};

struct HistogramBin {
  std::uint64_t count = 0;
  double probability = 0.0;
  double min_energy = 0.0;
  std::uint64_t individuals = 0;
};

struct FoldOptions {
  AnsatzSpec ansatz;
  CVaRConfig cvar;
  DEConfig de;
  std::optional<double> ground_energy;
};

struct FoldResult {
  std::vector<double> best_theta;
  double best_cvar = 0.0;
  std::vector<GenerationLog> trajectory;
  std::vector<double> final_p0;
  std::map<std::string, HistogramBin> histogram;  // keyed by contact bitstring
  std::uint64_t best_bitstring = 0;
  double best_energy = 0.0;
  int population = 0;
};

/// Contact-register part of a full bitstring, in layout order.
std::string contact_key(std::uint64_t bits, const RegisterLayout& layout);

FoldResult fold(const Hamiltonian& h, const FoldOptions& opts,
                std::function<void(const GenerationLog&)> on_generation = {});

}  // namespace latfold
