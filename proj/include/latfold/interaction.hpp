#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "latfold/peptide.hpp"

namespace latfold {

/// Symmetric residue-residue contact energies keyed by one-letter code.
class SpeciesMatrix {
 public:
  /// CSV with a header row of codes; either triangle (or both) may be filled,
  /// missing mirror entries are copied across the diagonal.
  static SpeciesMatrix load(const std::filesystem::path& path);
  static SpeciesMatrix parse(const std::string& csv_text);

  bool has(char code) const;
  double at(char a, char b) const;
  const std::string& codes() const { return codes_; }

 private:
  int slot(char code) const;

  std::string codes_;
  std::vector<double> values_;
};

struct ContactOverride {
  BeadId a;
  BeadId b;
  int order = 1;
  double epsilon = 0.0;
};

/// Rows `i,j,l,epsilon`, 1-based bead labels with an optional `s` suffix for
/// side-chain beads. A header row and `#` comments are allowed.
std::vector<ContactOverride> load_contact_map(const std::filesystem::path& path);
std::vector<ContactOverride> parse_contact_map(const std::string& csv_text);

/// Pair energies for contact orders 1 and 2. Negative values attract.
class InteractionModel {
 public:
  InteractionModel() = default;
  explicit InteractionModel(int max_l) : max_l_(max_l) {}

  int max_l() const { return max_l_; }
  void set_max_l(int l) { max_l_ = l; }
  void set_matrix(int order, SpeciesMatrix m);
  const std::optional<SpeciesMatrix>& matrix(int order) const { return matrices_.at(order - 1); }
  /// Replaces the matrix value for one bead pair.
  void set_override(BeadId a, BeadId b, int order, double epsilon);
  void add_overrides(const std::vector<ContactOverride>& rows);
  const auto& overrides() const { return overrides_; }

  /// Override if present, else the order's species matrix, else 0.
  double epsilon(const Peptide& peptide, BeadId a, BeadId b, int order) const;

 private:
  int max_l_ = 1;
  std::array<std::optional<SpeciesMatrix>, 2> matrices_;
  std::map<std::tuple<BeadId, BeadId, int>, double> overrides_;
};

/// Bundled Miyazawa-Jernigan contact energy table (kT units).
std::filesystem::path default_mj_path();

}  // namespace latfold
