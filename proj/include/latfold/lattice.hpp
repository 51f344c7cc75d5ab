#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latfold/peptide.hpp"

namespace latfold {

using Bits = std::vector<std::uint8_t>;

enum class Encoding { kSparse, kDense };

std::string to_string(Encoding kind);
Encoding parse_encoding(std::string_view name);

struct EncodingScheme {
  Encoding kind = Encoding::kDense;

  int qubits_per_turn() const { return kind == Encoding::kSparse ? 4 : 2; }
  static EncodingScheme sparse() { return {Encoding::kSparse}; }
  static EncodingScheme dense() { return {Encoding::kDense}; }
  bool operator==(const EncodingScheme&) const = default;
};

/// A bond of the chain: main-chain turn k joins bead k to bead k+1, the side
/// turn of host k joins bead k to its side-chain bead.
struct TurnSlot {
  int host = 1;
  bool side = false;

  auto operator<=>(const TurnSlot&) const = default;
};

std::string to_string(TurnSlot slot);

/// One bit of a turn register: either a qubit index or a constant.
struct BitRef {
  int qubit = -1;
  std::uint8_t value = 0;

  bool fixed() const { return qubit < 0; }
};

struct TurnRegister {
  TurnSlot slot;
  std::vector<BitRef> bits;   // 2 (dense) or 4 (sparse) entries
  std::vector<int> allowed;   // axes reachable through the free bits

  bool fixed() const;
};

/// Interaction qubit asserting an order-l contact between beads a < b. Order-2
/// qubits carry the distance-index target of every chain neighbour of b.
struct ContactQubit {
  int order = 1;
  BeadId a;
  BeadId b;
  std::vector<int> targets;
  int index = -1;

  std::string label() const;
};

class RegisterLayout {
 public:
  const Peptide& peptide() const { return peptide_; }
  EncodingScheme scheme() const { return scheme_; }
  int max_l() const { return max_l_; }
  bool q6_saving() const { return q6_saving_; }

  int n_conf() const { return n_conf_; }
  int n_int() const { return static_cast<int>(contacts_.size()); }
  int n_qubits() const { return n_conf_ + n_int(); }

  /// Turn registers in chain order (main turn k, then the side turn of bead k).
  std::span<const TurnRegister> turns() const { return turns_; }
  const TurnRegister& turn(TurnSlot slot) const;
  std::optional<TurnSlot> slot_of(BeadId from, BeadId to) const;

  std::span<const ContactQubit> contacts() const { return contacts_; }
  std::optional<int> nn1_index(BeadId a, BeadId b) const;
  std::vector<std::pair<BeadId, BeadId>> pairs(int order) const;

  std::vector<std::string> qubit_labels() const;

  friend RegisterLayout build_layout(const Peptide&, EncodingScheme, int, bool);

 private:
  Peptide peptide_;
  EncodingScheme scheme_;
  int max_l_ = 1;
  bool q6_saving_ = false;
  int n_conf_ = 0;
  std::vector<TurnRegister> turns_;
  std::vector<ContactQubit> contacts_;
};

/// Qubit ordering: configuration qubits in chain order, then contact qubits
/// sorted by (order, a, b, targets).
RegisterLayout build_layout(const Peptide& peptide, EncodingScheme scheme, int max_l, bool q6_saving);

/// Whether the pair can carry an order-l contact: order 1 needs an odd bond
/// separation of at least 5 and order 2 an even separation of at least 4.
bool admissible_pair(const Peptide& peptide, BeadId a, BeadId b, int order);

/// Value of turn indicator f_axis on the bits of one turn.
int turn_indicator(int axis, std::span<const std::uint8_t> turn_bits, Encoding kind);

struct TurnSequence {
  std::vector<int> main;  // main[k-1] = axis of turn k
  std::vector<int> side;  // side[k-1] = axis of the side turn of bead k, -1 if none

  int turn(TurnSlot slot) const;
  bool operator==(const TurnSequence&) const = default;
};

std::string to_string(const TurnSequence& turns);

struct DecodedTurns {
  TurnSequence turns;
  bool valid = true;
  std::vector<TurnSlot> invalid;  // sparse registers that are not one-hot
};

/// Reads turns from a bitstring of length n_conf or n_qubits (contact bits are
/// ignored). Non-one-hot sparse turns are flagged and stored as -1.
DecodedTurns decode(std::span<const std::uint8_t> bits, const RegisterLayout& layout);

/// Configuration bits (length n_conf) for a turn sequence. Throws when the
/// sequence disagrees with the fixed bits of the layout.
Bits encode(const TurnSequence& turns, const RegisterLayout& layout);

using TurnCount = std::array<int, 4>;

struct Vec3i {
  int x = 0, y = 0, z = 0;
  bool operator==(const Vec3i&) const = default;
};

/// Tetrahedral axis vectors; bonds are u/sqrt(3).
inline constexpr std::array<Vec3i, 4> kAxes{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};

/// Bead positions on the diamond lattice, in integer units where a bond has
/// squared length 3.
class Conformation {
 public:
  std::span<const BeadId> beads() const { return beads_; }
  std::span<const Vec3i> coords() const { return coords_; }
  const TurnSequence& turns() const { return turns_; }
  char species(BeadId bead) const { return species_[index_of(bead)]; }

  int index_of(BeadId bead) const;
  const Vec3i& position(BeadId bead) const { return coords_[index_of(bead)]; }
  const TurnCount& turn_count(BeadId bead) const { return counts_[index_of(bead)]; }

  friend Conformation grow(const TurnSequence&, const Peptide&);

 private:
  std::vector<BeadId> beads_;
  std::vector<char> species_;
  std::vector<TurnCount> counts_;
  std::vector<Vec3i> coords_;
  TurnSequence turns_;
};

/// Bead 1 at the origin on sublattice B; bond out of bead k along (-1)^k u_t.
Conformation grow(const TurnSequence& turns, const Peptide& peptide);

/// Squared Euclidean distance in integer units (bond = 3).
int squared_distance(const Conformation& c, BeadId a, BeadId b);
/// Euclidean distance in bond units.
double euclidean_distance(const Conformation& c, BeadId a, BeadId b);
/// d = sum_a dn_a^2 from the signed turn counts.
int distance_index(const Conformation& c, BeadId a, BeadId b);
/// Bond-unit distance implied by a distance index and the parity of the pair.
double distance_from_index(int d, int parity_sum);
bool self_avoiding(const Conformation& c);

/// Required side-chain axis for host `host` given the axes of the incoming
/// and outgoing main-chain turns; -1 when the two turns share an axis.
int chirality_side_turn(int prev_axis, int next_axis, int host);
/// Every side turn matches the chirality of its host.
bool chiral(const TurnSequence& turns);

/// Mixed-radix space of free turn choices (fixed turns and the q6 restriction
/// applied).
class TurnSpace {
 public:
  explicit TurnSpace(const RegisterLayout& layout);

  std::uint64_t size() const { return size_; }
  TurnSequence at(std::uint64_t index) const;

 private:
  TurnSequence base_;
  std::vector<TurnSlot> slots_;
  std::vector<std::vector<int>> choices_;
  std::uint64_t size_ = 1;
};

}  // namespace latfold
