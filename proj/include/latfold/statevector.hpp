#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latfold {

enum class Entangler { kRing, kAllToAll };

std::string to_string(Entangler e);
Entangler parse_entangler(std::string_view name);

/// Hadamard layer, RY layer, CNOT block, RY layer; 2n angles.
struct AnsatzSpec {
  int n = 1;
  Entangler entangler = Entangler::kRing;
  int layers = 2;  // enters only the default population size

  int parameter_count() const { return 2 * n; }
};

/// CNOT list of the entangling block as (control, target), in application order.
std::vector<std::pair<int, int>> entangler_gates(int n, Entangler e);

/// The entangling block as a permutation of basis states, x -> L x over GF(2).
class LinearPermutation {
 public:
  LinearPermutation(int n, std::span<const std::pair<int, int>> cnots);

  int n() const { return n_; }
  std::uint64_t apply(std::uint64_t x) const;

 private:
  int n_;
  std::vector<std::vector<std::uint64_t>> tables_;  // one 256-entry table per input byte
};

/// Real amplitudes (the ansatz only uses real gates). Qubit k is bit k of the
/// basis index.
class AnsatzSimulator {
 public:
  explicit AnsatzSimulator(AnsatzSpec spec);

  const AnsatzSpec& spec() const { return spec_; }
  /// Writes the 2^n amplitudes into `out` (resized as needed).
  void prepare(std::span<const double> theta, std::vector<double>& out) const;
  std::vector<double> prepare(std::span<const double> theta) const;

 private:
  AnsatzSpec spec_;
  LinearPermutation inverse_;  // basis map of the inverse entangling block
};

std::vector<double> prepare_state(const AnsatzSpec& spec, std::span<const double> theta);

/// Applies RY(angle) on `qubit` to a real state in place.
void apply_ry(std::vector<double>& state, int qubit, double angle);
/// Applies CNOT(control -> target) to a real state in place.
void apply_cnot(std::vector<double>& state, int control, int target);

/// Multiset of measured basis states, sorted by bitstring.
struct SampleBatch {
  int n_qubits = 0;
  std::vector<std::uint64_t> bitstrings;
  std::vector<std::uint32_t> counts;
  std::vector<double> energies;  // filled by the caller, parallel to bitstrings

  std::uint64_t shots() const;
};

/// Multinomial draw of `shots` outcomes from |amplitude|^2.
SampleBatch sample(std::span<const double> amplitudes, int n_qubits, std::uint32_t shots, std::uint64_t seed);

/// Uniform double in [0,1) from 53 random bits.
double unit_uniform(std::uint64_t bits);
/// splitmix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace latfold
