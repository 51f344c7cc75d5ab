#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latfold/pb_poly.hpp"

namespace latfold {

/// Weighted Z strings; the key is the Z support (empty = identity).
class PauliHamiltonian {
 public:
  using TermMap = std::unordered_map<VarSet, double, VarSetHash>;

  PauliHamiltonian() = default;
  explicit PauliHamiltonian(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  const TermMap& strings() const { return strings_; }
  std::vector<std::pair<VarSet, double>> sorted_strings() const;
  std::size_t size() const { return strings_.size(); }
  double coeff(const VarSet& gamma) const;

  void add(const VarSet& gamma, double coeff);
  void prune(double relative_tol = 1e-12);

  /// <x|H|x> for a computational basis state.
  double evaluate(std::span<const std::uint8_t> bits) const;

  /// Back to the binary form via Z = 1 - 2q.
  PBPoly to_poly() const;

 private:
  int n_qubits_ = 0;
  TermMap strings_;
};

/// Expands q -> (1 - Z)/2 for every monomial.
PauliHamiltonian to_pauli(const PBPoly& poly, int n_qubits);

struct ResourceReport {
  std::size_t term_count = 0;  // all stored strings, identity included
  int max_locality = 0;
  std::map<int, std::size_t> locality_histogram;  // identity excluded
};

ResourceReport resource_report(const PauliHamiltonian& h);

}  // namespace latfold
