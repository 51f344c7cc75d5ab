#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latfold/hamiltonian.hpp"
#include "latfold/interaction.hpp"
#include "latfold/lattice.hpp"

namespace latfold {

struct ContactKey {
  BeadId a;
  BeadId b;
  int order = 1;

  auto operator<=>(const ContactKey&) const = default;
};

std::string to_string(const ContactKey& key);

struct SpectrumEntry {
  double energy = 0.0;
  std::uint64_t degeneracy = 0;
  std::vector<ContactKey> contacts;
  bool self_avoiding = true;
  Bits contact_bits;  // ideal contact register, length n_int
  TurnSequence turns;  // representative
};

struct OracleOptions {
  std::uint64_t cap = std::uint64_t{1} << 26;
  int threads = 1;
};

/// Realised contacts of a grown chain among the admissible pairs.
std::vector<ContactKey> realised_contacts(const Conformation& c, const RegisterLayout& layout);
double geometric_energy(const Conformation& c, const RegisterLayout& layout, const InteractionModel& model);
/// Contact-register assignment that reproduces the geometric energy.
Bits ideal_contact_bits(const Conformation& c, const RegisterLayout& layout);

/// Every turn assignment grouped by (contact set, self-avoidance); sorted by
/// energy, self-avoiding entries first on ties.
std::vector<SpectrumEntry> enumerate(const RegisterLayout& layout, const InteractionModel& model,
                                     const OracleOptions& opts = {});

/// Distinct energies of the self-avoiding entries, ascending.
std::vector<double> fold_levels(const std::vector<SpectrumEntry>& spectrum);
std::optional<SpectrumEntry> ground_entry(const std::vector<SpectrumEntry>& spectrum);

struct CertifyOptions {
  int full_sweep_max_conf = 22;
  std::uint64_t violation_samples = std::uint64_t{1} << 16;
  std::uint64_t seed = 7;
  double tol = 1e-9;
  std::size_t max_failures = 8;
  OracleOptions oracle;
};

struct Counterexample {
  Bits bits;
  std::string reason;
  double hamiltonian = 0.0;
  double expected = 0.0;
};

struct Certificate {
  bool passed = false;
  double ground_energy = 0.0;
  std::uint64_t self_avoiding_checked = 0;
  std::uint64_t violations_checked = 0;
  bool full_sweep = false;
  double min_violation_energy = 0.0;
  std::uint64_t overlap_checked = 0;
  std::uint64_t overlap_below_ground = 0;
  std::vector<Counterexample> failures;

  std::string summary() const;
};

/// Checks that minimising over contact qubits reproduces the geometric energy
/// of every self-avoiding conformation and that constraint violations stay
/// above the ground energy. Requires every pair energy to be <= 0.
Certificate certify(const Hamiltonian& h, const CertifyOptions& opts = {});

/// Fraction of samples whose energy matches each fold level.
std::vector<double> ground_truth_probability(std::span<const double> sample_energies, std::span<const double> levels,
                                             double tol = 1e-6);

}  // namespace latfold
