#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace latfold {

/// Address of a bead: main-chain position (1-based) plus a flag selecting the
/// single side-chain bead hanging off that position.
struct BeadId {
  int main = 1;
  bool side = false;

  auto operator<=>(const BeadId&) const = default;
};

/// "7" for main-chain bead 7, "7s" for its side-chain bead.
std::string to_string(BeadId bead);
BeadId parse_bead(std::string_view token);

/// The two interpenetrating sublattices of the diamond lattice. Bead 1 sits on
/// B; odd main-chain positions are B sites, even ones A sites.
enum class Sublattice { kA, kB };

Sublattice sublattice(BeadId bead);

/// Sign (+1/-1) applied to the axis vector of every bond leaving `host`.
inline int bond_sign(int host) { return (host % 2 == 0) ? 1 : -1; }

/// Primary sequence with optional one-bead side chains. Terminal beads never
/// carry side chains.
class Peptide {
 public:
  Peptide() = default;
  Peptide(std::string main_chain, std::vector<char> side_chains);

  /// Parses one-letter codes with optional side-chain annotation, e.g.
  /// "APR[L]LRFY" puts a side-chain bead of species L on bead 3.
  static Peptide parse(std::string_view text);

  int length() const { return static_cast<int>(main_.size()); }
  const std::string& main_chain() const { return main_; }
  bool has_side_chain(int position) const;
  bool has_any_side_chain() const;
  int side_chain_count() const;
  char species(BeadId bead) const;
  bool contains(BeadId bead) const;

  /// All beads in canonical order: 1, 2, 2s, 3, 3s, ...
  const std::vector<BeadId>& beads() const { return beads_; }
  int bead_count() const { return static_cast<int>(beads_.size()); }
  /// Dense index of `bead` into beads().
  int bead_index(BeadId bead) const;

  /// Chain neighbours (bonded beads) in canonical order.
  std::vector<BeadId> neighbors(BeadId bead) const;
  /// Number of bonds on the chain path between two beads.
  int bond_separation(BeadId a, BeadId b) const;

  /// Inverse of parse().
  std::string to_string() const;

 private:
  void index_beads();

  std::string main_;
  std::vector<char> side_;  // '\0' = no side chain; size == length()
  std::vector<BeadId> beads_;
  std::vector<int> main_offset_;
};

}  // namespace latfold
