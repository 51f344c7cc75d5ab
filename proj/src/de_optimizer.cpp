#include "latfold/de_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

namespace latfold {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum Stream : std::uint64_t { kInitAngles = 0, kInitScore = 1, kPropose = 2, kTrialScore = 3, kParentScore = 4 };

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const int workers = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < count; k += workers) fn(k);
    });
  }
}

}  // namespace

int default_population(const AnsatzSpec& spec) { return std::max(4, 5 * spec.layers * spec.n); }

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

std::vector<Individual> init_population(const DEConfig& cfg, int population, int dim, const Objective& objective) {
  DEConfig sized = cfg;
  sized.population = population;
  DifferentialEvolution de(sized, dim, objective);
  de.initialise();
  return {de.population().begin(), de.population().end()};
}

std::vector<double> propose(std::size_t parent, std::size_t best, std::span<const Individual> population,
                            const DEConfig& cfg, std::mt19937_64& rng) {
  const std::size_t p = population.size();
  if (p < 4) throw std::invalid_argument("differential evolution needs at least 4 individuals");
  std::size_t r1, r2;
  do {
    r1 = uniform_index(rng, p);
  } while (r1 == parent);
  do {
    r2 = uniform_index(rng, p);
  } while (r2 == parent || r2 == r1);

  const auto& x = population[parent].theta;
  const auto& xb = population[best].theta;
  const auto& a = population[r1].theta;
  const auto& b = population[r2].theta;
  const std::size_t dim = x.size();
  const std::size_t j_rand = uniform_index(rng, dim);
  std::vector<double> trial(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const bool cross = unit_uniform(rng()) < cfg.CR || j == j_rand;
    const double donor = x[j] + cfg.F * (xb[j] - x[j]) + cfg.F * (a[j] - b[j]);
    trial[j] = wrap_angle(cross ? donor : x[j]);
  }
  return trial;
}

bool trial_survives(double parent_fitness, double trial_fitness) { return trial_fitness < parent_fitness; }

DifferentialEvolution::DifferentialEvolution(DEConfig cfg, int dim, Objective objective)
    : cfg_(cfg), dim_(dim), population_size_(cfg.population), objective_(std::move(objective)) {
  if (dim < 1) throw std::invalid_argument("search dimension must be positive");
  if (population_size_ == 0) population_size_ = default_population({std::max(1, dim / 2), Entangler::kRing, 2});
  if (population_size_ < 4) throw std::invalid_argument("population must hold at least 4 individuals");
  if (!(cfg.F > 0.0 && cfg.F <= 2.0)) throw std::invalid_argument("F must lie in (0, 2]");
  if (!(cfg.CR >= 0.0 && cfg.CR <= 1.0)) throw std::invalid_argument("CR must lie in [0, 1]");
  if (cfg.generations < 0) throw std::invalid_argument("generations must be non-negative");
}

void DifferentialEvolution::initialise() {
  std::vector<std::vector<double>> thetas(population_size_);
  for (int i = 0; i < population_size_; ++i) {
    std::mt19937_64 rng(derive_seed(cfg_.seed, 0, i, kInitAngles));
    thetas[i].resize(dim_);
    for (auto& t : thetas[i]) t = kTwoPi * unit_uniform(rng());
  }
  initialise(std::move(thetas));
}

void DifferentialEvolution::initialise(std::vector<std::vector<double>> thetas) {
  if (static_cast<int>(thetas.size()) != population_size_) throw std::invalid_argument("wrong population size");
  for (auto& t : thetas) {
    if (static_cast<int>(t.size()) != dim_) throw std::invalid_argument("wrong angle vector length");
    for (auto& x : t) x = wrap_angle(x);
  }
  std::vector<Evaluation> evals;
  evaluate_all(thetas, kInitScore, evals);
  population_.assign(population_size_, {});
  for (int i = 0; i < population_size_; ++i) {
    auto& ind = population_[i];
    ind.theta = std::move(thetas[i]);
    ind.fitness = ind.best_fitness = evals[i].cvar;
    ind.p_ground = evals[i].p_ground;
    ind.batch = std::move(evals[i].batch);
  }
  generation_ = 0;
  trajectory_.clear();
  log_generation();
}

void DifferentialEvolution::evaluate_all(const std::vector<std::vector<double>>& thetas, std::uint64_t stream,
                                         std::vector<Evaluation>& out) const {
  out.assign(thetas.size(), {});
  parallel_for(thetas.size(), cfg_.threads, [&](std::size_t i) {
    out[i] = objective_(thetas[i], derive_seed(cfg_.seed, generation_, i, stream));
  });
}

std::size_t DifferentialEvolution::best_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population_.size(); ++i) {
    if (population_[i].fitness < population_[best].fitness) best = i;
  }
  return best;
}

void DifferentialEvolution::step() {
  if (population_.empty()) throw std::logic_error("population not initialised");
  ++generation_;
  const std::size_t best = best_index();
  std::vector<std::vector<double>> trials(population_size_);
  std::vector<std::vector<double>> parents(population_size_);
  for (int i = 0; i < population_size_; ++i) {
    std::mt19937_64 rng(derive_seed(cfg_.seed, generation_, i, kPropose));
    trials[i] = propose(i, best, population_, cfg_, rng);
    parents[i] = population_[i].theta;
  }
  std::vector<Evaluation> trial_eval, parent_eval;
  evaluate_all(trials, kTrialScore, trial_eval);
  evaluate_all(parents, kParentScore, parent_eval);
  for (int i = 0; i < population_size_; ++i) {
    auto& ind = population_[i];
    if (trial_survives(parent_eval[i].cvar, trial_eval[i].cvar)) {
      ind.theta = std::move(trials[i]);
      ind.fitness = trial_eval[i].cvar;
      ind.p_ground = trial_eval[i].p_ground;
      ind.batch = std::move(trial_eval[i].batch);
    } else {
      ind.fitness = parent_eval[i].cvar;
      ind.p_ground = parent_eval[i].p_ground;
      ind.batch = std::move(parent_eval[i].batch);
    }
    ind.best_fitness = std::min(ind.best_fitness, ind.fitness);
  }
  log_generation();
}

void DifferentialEvolution::run(std::function<void(const GenerationLog&)> on_generation) {
  if (population_.empty()) initialise();
  if (on_generation) on_generation(trajectory_.back());
  while (generation_ < cfg_.generations) {
    step();
    if (on_generation) on_generation(trajectory_.back());
  }
}

void DifferentialEvolution::log_generation() {
  GenerationLog log;
  log.generation = generation_;
  log.best_cvar = population_.front().fitness;
  for (const auto& ind : population_) {
    log.mean_cvar += ind.fitness;
    log.mean_p0 += ind.p_ground;
    log.best_cvar = std::min(log.best_cvar, ind.fitness);
    log.max_p0 = std::max(log.max_p0, ind.p_ground);
  }
  log.mean_cvar /= population_.size();
  log.mean_p0 /= population_.size();
  trajectory_.push_back(log);
}

std::string contact_key(std::uint64_t bits, const RegisterLayout& layout) {
  std::string key;
  for (const auto& c : layout.contacts()) key.push_back(((bits >> c.index) & 1U) ? '1' : '0');
  return key;
}

FoldResult fold(const Hamiltonian& h, const FoldOptions& opts, std::function<void(const GenerationLog&)> on_generation) {
  AnsatzSpec spec = opts.ansatz;
  spec.n = h.layout.n_qubits();
  CvarEngine engine(h.total, spec, opts.cvar);
  if (opts.ground_energy) engine.set_ground_energy(*opts.ground_energy);

  DEConfig cfg = opts.de;
  if (cfg.population == 0) cfg.population = default_population(spec);
  DifferentialEvolution de(cfg, spec.parameter_count(),
                           [&engine](std::span<const double> theta, std::uint64_t seed) {
                             return engine.evaluate(theta, seed);
                           });
  de.run(std::move(on_generation));

  FoldResult result;
  result.population = de.population_size();
  result.trajectory = de.trajectory();
  const auto& best = de.population()[de.best_index()];
  result.best_theta = best.theta;
  result.best_cvar = best.fitness;

  std::uint64_t total = 0;
  bool have_best = false;
  for (const auto& ind : de.population()) {
    result.final_p0.push_back(ind.p_ground);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < ind.batch.bitstrings.size(); ++k) {
      const std::uint64_t bits = ind.batch.bitstrings[k];
      const double e = ind.batch.energies[k];
      const std::string key = contact_key(bits, h.layout);
      auto [it, inserted] = result.histogram.try_emplace(key);
      auto& bin = it->second;
      if (inserted || e < bin.min_energy) bin.min_energy = e;
      bin.count += ind.batch.counts[k];
      if (seen.insert(key).second) ++bin.individuals;
      total += ind.batch.counts[k];
      if (!have_best || e < result.best_energy || (e == result.best_energy && bits < result.best_bitstring)) {
        result.best_energy = e;
        result.best_bitstring = bits;
        have_best = true;
      }
    }
  }
  for (auto& [key, bin] : result.histogram) bin.probability = static_cast<double>(bin.count) / total;
  return result;
}

}  // namespace latfold
