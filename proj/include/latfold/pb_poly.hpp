#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace latfold {

/// Fixed-capacity set of variable indices, stored as a bitmask.
class VarSet {
 public:
  static constexpr int kCapacity = 256;

  VarSet() = default;
  VarSet(std::initializer_list<int> vars);
  static VarSet from_mask(std::uint64_t mask) {
    VarSet s;
    s.words_[0] = mask;
    return s;
  }

  bool empty() const { return (words_[0] | words_[1] | words_[2] | words_[3]) == 0; }
  int size() const;
  bool contains(int var) const { return (words_[var >> 6] >> (var & 63)) & 1U; }
  void insert(int var);
  void erase(int var);
  /// Largest member + 1 (0 when empty).
  int extent() const;
  std::vector<int> members() const;
  /// Low 64 members as a mask. Throws if a member is >= 64.
  std::uint64_t mask() const;

  bool subset_of(const VarSet& other) const;
  bool intersects(const VarSet& other) const;

  VarSet operator|(const VarSet& o) const;
  VarSet operator&(const VarSet& o) const;
  VarSet operator^(const VarSet& o) const;
  VarSet without(const VarSet& o) const;

  bool operator==(const VarSet&) const = default;
  /// Graded order: by size, then lexicographic on sorted members.
  bool operator<(const VarSet& o) const;

  std::size_t hash() const;

 private:
  std::array<std::uint64_t, 4> words_{};
};

struct VarSetHash {
  std::size_t operator()(const VarSet& s) const { return s.hash(); }
};

std::string to_string(const VarSet& s);

/// Multilinear polynomial in binary variables (x^2 = x).
class PBPoly {
 public:
  using TermMap = std::unordered_map<VarSet, double, VarSetHash>;

  PBPoly() = default;
  PBPoly(double constant);  // NOLINT(google-explicit-constructor)
  static PBPoly variable(int var);
  static PBPoly monomial(const VarSet& vars, double coeff);

  const TermMap& terms() const { return terms_; }
  std::vector<std::pair<VarSet, double>> sorted_terms() const;
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  double constant() const;
  double coeff(const VarSet& vars) const;
  int degree() const;
  /// Largest variable index + 1 over all terms.
  int extent() const;
  VarSet support() const;

  void add_term(const VarSet& vars, double coeff);

  PBPoly& operator+=(const PBPoly& o);
  PBPoly& operator-=(const PBPoly& o);
  PBPoly& operator*=(double s);
  PBPoly& operator*=(const PBPoly& o);

  friend PBPoly operator+(PBPoly a, const PBPoly& b) { return a += b; }
  friend PBPoly operator-(PBPoly a, const PBPoly& b) { return a -= b; }
  friend PBPoly operator*(const PBPoly& a, const PBPoly& b);
  friend PBPoly operator*(PBPoly a, double s) { return a *= s; }
  friend PBPoly operator*(double s, PBPoly a) { return a *= s; }
  PBPoly operator-() const { return *this * -1.0; }

  /// Drops coefficients with |c| <= tol * max|c|.
  void prune(double relative_tol = 1e-12);

  double evaluate(std::span<const std::uint8_t> bits) const;
  /// Same as evaluate() for polynomials over variables < 64.
  double evaluate_mask(std::uint64_t bits) const;

  /// Substitutes values for the variables in `fixed`; value bits outside
  /// `fixed` are ignored.
  PBPoly restrict(const VarSet& fixed, const VarSet& values) const;

  /// Exact equality of the canonical forms up to `tol` per coefficient.
  bool approx_equal(const PBPoly& o, double tol = 1e-9) const;

 private:
  TermMap terms_;
};

/// Energies of all 2^n basis states (little-endian: bit k of the index is
/// variable k).
std::vector<double> energy_table(const PBPoly& poly, int n);

}  // namespace latfold
