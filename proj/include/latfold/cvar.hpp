#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latfold/pb_poly.hpp"
#include "latfold/statevector.hpp"

namespace latfold {

struct CVaRConfig {
  double alpha = 0.05;
  std::uint32_t shots = 1024;
};

/// Number of lowest shots averaged: ceil(alpha * shots), at least 1.
std::uint64_t tail_size(double alpha, std::uint64_t shots);

/// Mean of the lowest ceil(alpha * n_s) shot energies.
double cvar(const SampleBatch& batch, double alpha);

struct Evaluation {
  double cvar = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double p_ground = 0.0;  // share of shots at the ground energy, 0 when unknown
  SampleBatch batch;
};

/// Samples the ansatz and scores shots on the diagonal Hamiltonian.
class CvarEngine {
 public:
  CvarEngine(const PBPoly& hamiltonian, AnsatzSpec spec, CVaRConfig cfg);

  const AnsatzSpec& spec() const { return sim_.spec(); }
  const CVaRConfig& config() const { return cfg_; }
  void set_ground_energy(double energy, double tol = 1e-6);
  std::optional<double> ground_energy() const { return ground_; }

  double energy(std::uint64_t bits) const;
  void score(SampleBatch& batch) const;
  Evaluation evaluate(std::span<const double> theta, std::uint64_t seed) const;

 private:
  AnsatzSimulator sim_;
  CVaRConfig cfg_;
  PBPoly poly_;
  std::vector<double> table_;
  std::optional<double> ground_;
  double ground_tol_ = 1e-6;
};

}  // namespace latfold
