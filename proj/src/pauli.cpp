#include "latfold/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latfold {

std::vector<std::pair<VarSet, double>> PauliHamiltonian::sorted_strings() const {
  std::vector<std::pair<VarSet, double>> out(strings_.begin(), strings_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

double PauliHamiltonian::coeff(const VarSet& gamma) const {
  auto it = strings_.find(gamma);
  return it == strings_.end() ? 0.0 : it->second;
}

void PauliHamiltonian::add(const VarSet& gamma, double coeff) {
  if (coeff == 0.0) return;
  if (gamma.extent() > n_qubits_) throw std::out_of_range("Pauli string acts beyond the register");
  auto [it, inserted] = strings_.try_emplace(gamma, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) strings_.erase(it);
  }
}

void PauliHamiltonian::prune(double relative_tol) {
  double scale = 0.0;
  for (const auto& [g, c] : strings_) scale = std::max(scale, std::abs(c));
  const double cut = relative_tol * scale;
  std::erase_if(strings_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
}

double PauliHamiltonian::evaluate(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) < n_qubits_) throw std::invalid_argument("bitstring shorter than register");
  VarSet ones;
  for (int k = 0; k < n_qubits_; ++k) {
    if (bits[k]) ones.insert(k);
  }
  double e = 0.0;
  for (const auto& [g, c] : strings_) e += (g & ones).size() % 2 ? -c : c;
  return e;
}

PBPoly PauliHamiltonian::to_poly() const {
  PBPoly out;
  for (const auto& [g, c] : strings_) {
    PBPoly term(c);
    for (int v : g.members()) term *= PBPoly(1.0) - 2.0 * PBPoly::variable(v);
    out += term;
  }
  out.prune();
  return out;
}

PauliHamiltonian to_pauli(const PBPoly& poly, int n_qubits) {
  if (poly.extent() > n_qubits) throw std::invalid_argument("polynomial acts beyond the register");
  PauliHamiltonian h(n_qubits);
  for (const auto& [s, c] : poly.terms()) {
    const auto vars = s.members();
    const int k = static_cast<int>(vars.size());
    const double base = std::ldexp(c, -k);
    for (std::uint32_t sub = 0; sub < (1U << k); ++sub) {
      VarSet gamma;
      for (int b = 0; b < k; ++b) {
        if (sub >> b & 1U) gamma.insert(vars[b]);
      }
      h.add(gamma, std::popcount(sub) % 2 ? -base : base);
    }
  }
  h.prune();
  return h;
}

ResourceReport resource_report(const PauliHamiltonian& h) {
  ResourceReport r;
  r.term_count = h.size();
  for (const auto& [g, c] : h.strings()) {
    const int loc = g.size();
    if (loc == 0) continue;
    r.max_locality = std::max(r.max_locality, loc);
    ++r.locality_histogram[loc];
  }
  return r;
}

}  // namespace latfold
