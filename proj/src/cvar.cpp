#include "latfold/cvar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace latfold {

namespace {

constexpr int kTableLimit = 26;

}  // namespace

std::uint64_t tail_size(double alpha, std::uint64_t shots) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  const double k = std::ceil(alpha * static_cast<double>(shots) - 1e-9);
  return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(k), 1, shots);
}

double cvar(const SampleBatch& batch, double alpha) {
  const std::uint64_t shots = batch.shots();
  if (shots == 0) throw std::invalid_argument("empty sample batch");
  if (batch.energies.size() != batch.bitstrings.size()) throw std::invalid_argument("sample batch is not scored");
  std::vector<std::size_t> order(batch.energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return batch.energies[a] < batch.energies[b]; });
  std::uint64_t left = tail_size(alpha, shots);
  const double k = static_cast<double>(left);
  std::vector<std::uint64_t> take(order.size(), 0);
  for (std::size_t i : order) {
    take[i] = std::min<std::uint64_t>(left, batch.counts[i]);
    left -= take[i];
    if (left == 0) break;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < take.size(); ++i) {
    if (take[i]) sum += batch.energies[i] * static_cast<double>(take[i]);
  }
  return sum / k;
}

CvarEngine::CvarEngine(const PBPoly& hamiltonian, AnsatzSpec spec, CVaRConfig cfg)
    : sim_(spec), cfg_(cfg), poly_(hamiltonian) {
  if (hamiltonian.extent() > spec.n) throw std::invalid_argument("Hamiltonian acts beyond the ansatz register");
  tail_size(cfg.alpha, cfg.shots);
  if (spec.n <= kTableLimit) table_ = energy_table(hamiltonian, spec.n);
}

void CvarEngine::set_ground_energy(double energy, double tol) {
  ground_ = energy;
  ground_tol_ = tol;
}

double CvarEngine::energy(std::uint64_t bits) const {
  return table_.empty() ? poly_.evaluate_mask(bits) : table_[bits];
}

void CvarEngine::score(SampleBatch& batch) const {
  batch.energies.resize(batch.bitstrings.size());
  for (std::size_t k = 0; k < batch.bitstrings.size(); ++k) batch.energies[k] = energy(batch.bitstrings[k]);
}

Evaluation CvarEngine::evaluate(std::span<const double> theta, std::uint64_t seed) const {
  thread_local std::vector<double> state;
  sim_.prepare(theta, state);
  Evaluation ev;
  ev.batch = sample(state, spec().n, cfg_.shots, seed);
  score(ev.batch);
  ev.cvar = cvar(ev.batch, cfg_.alpha);
  double sum = 0.0;
  std::uint64_t ground_hits = 0;
  ev.min = ev.batch.energies.front();
  for (std::size_t k = 0; k < ev.batch.energies.size(); ++k) {
    const double e = ev.batch.energies[k];
    sum += e * ev.batch.counts[k];
    ev.min = std::min(ev.min, e);
    if (ground_ && std::abs(e - *ground_) <= ground_tol_) ground_hits += ev.batch.counts[k];
  }
  const double shots = static_cast<double>(ev.batch.shots());
  ev.mean = sum / shots;
  ev.p_ground = static_cast<double>(ground_hits) / shots;
  return ev;
}

}  // namespace latfold
