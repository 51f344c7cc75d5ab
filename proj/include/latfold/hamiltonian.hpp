#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latfold/interaction.hpp"
#include "latfold/lattice.hpp"
#include "latfold/pauli.hpp"
#include "latfold/pb_poly.hpp"

namespace latfold {

/// User penalty weights; unset entries follow the automatic rule.
struct PenaltyConfig {
  std::optional<double> lambda_back;
  std::optional<double> lambda_chirality;
  std::optional<double> lambda_onehot;
  std::optional<double> lambda_1;  // same value for every order-1 pair
  std::optional<double> lambda_2;
  std::optional<double> lambda_3;
  std::optional<double> lambda_5;
  bool audit = true;  // throw when a dominance check fails
};

/// Resolved weights for one instance.
struct Penalties {
  double back = 0.0;
  double chirality = 0.0;
  double onehot = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l5 = 0.0;
  std::map<std::pair<BeadId, BeadId>, double> l1;

  double lambda1(BeadId a, BeadId b) const;
  double lambda_target(int target) const { return target == 3 ? l3 : l5; }
};

struct AuditCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok() const { return lhs > rhs; }
};

struct LambdaAudit {
  std::vector<AuditCheck> checks;

  bool passed() const;
  std::vector<AuditCheck> failures() const;
};

/// Order-l energy of every admissible pair, the largest magnitude and a
/// bound on how far the interaction terms can fall below zero.
struct EnergyScale {
  double max_abs = 0.0;
  double bonus_bound = 0.0;
};

EnergyScale energy_scale(const RegisterLayout& layout, const InteractionModel& model);
Penalties resolve_penalties(const RegisterLayout& layout, const InteractionModel& model, const PenaltyConfig& cfg);
LambdaAudit audit_penalties(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p);


/// Symbolic turn geometry with memoised polynomials.
class GeometryPolys {
 public:
  explicit GeometryPolys(const RegisterLayout& layout);

  const RegisterLayout& layout() const { return *layout_; }
  const PBPoly& indicator(int axis, TurnSlot slot);
  /// Signed count of axis steps from bead 1 to `bead`.
  const PBPoly& position(int axis, BeadId bead);
  PBPoly delta_n(int axis, BeadId a, BeadId b);
  const PBPoly& distance(BeadId a, BeadId b);

 private:
  const RegisterLayout* layout_;
  std::map<std::pair<TurnSlot, int>, PBPoly> indicators_;
  std::map<std::pair<BeadId, int>, PBPoly> positions_;
  std::map<std::pair<BeadId, BeadId>, PBPoly> distances_;
};

PBPoly turn_indicator_poly(int axis, TurnSlot slot, const RegisterLayout& layout);
/// n_a(b) - n_a(a) in signed axis steps.
PBPoly delta_n_poly(int axis, BeadId a, BeadId b, const RegisterLayout& layout);
PBPoly distance_poly(BeadId a, BeadId b, const RegisterLayout& layout);

PBPoly build_Hgc(const RegisterLayout& layout, const Penalties& p);
PBPoly build_Hch(const RegisterLayout& layout, const Penalties& p);
PBPoly build_Honehot(const RegisterLayout& layout, const Penalties& p);
PBPoly build_H1(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p);
PBPoly build_H2(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p);

struct Hamiltonian {
  RegisterLayout layout;
  InteractionModel model;
  Penalties penalties;
  LambdaAudit audit;
  PBPoly gc;
  PBPoly ch;
  PBPoly onehot;
  PBPoly h1;
  PBPoly h2;
  PBPoly total;

  PBPoly constraints() const { return gc + ch + onehot; }
  PBPoly interaction() const { return h1 + h2; }
  PauliHamiltonian pauli() const { return to_pauli(total, layout.n_qubits()); }
};

Hamiltonian assemble(const RegisterLayout& layout, const InteractionModel& model, const PenaltyConfig& cfg);
Hamiltonian assemble(const Peptide& peptide, EncodingScheme scheme, const InteractionModel& model,
                     const PenaltyConfig& cfg, bool q6_saving);

}  // namespace latfold
