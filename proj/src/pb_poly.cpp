#include "latfold/pb_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latfold {

namespace {

void check_var(int var) {
  if (var < 0 || var >= VarSet::kCapacity) throw std::out_of_range("variable index out of range");
}

}  // namespace

VarSet::VarSet(std::initializer_list<int> vars) {
  for (int v : vars) insert(v);
}

int VarSet::size() const {
  int n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

void VarSet::insert(int var) {
  check_var(var);
  words_[var >> 6] |= std::uint64_t{1} << (var & 63);
}

void VarSet::erase(int var) {
  check_var(var);
  words_[var >> 6] &= ~(std::uint64_t{1} << (var & 63));
}

int VarSet::extent() const {
  for (int w = 3; w >= 0; --w) {
    if (words_[w]) return w * 64 + 64 - std::countl_zero(words_[w]);
  }
  return 0;
}

std::vector<int> VarSet::members() const {
  std::vector<int> out;
  for (int w = 0; w < 4; ++w) {
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) out.push_back(w * 64 + std::countr_zero(bits));
  }
  return out;
}

std::uint64_t VarSet::mask() const {
  if (words_[1] | words_[2] | words_[3]) throw std::out_of_range("variable set does not fit a 64-bit mask");
  return words_[0];
}

bool VarSet::subset_of(const VarSet& other) const {
  for (int w = 0; w < 4; ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool VarSet::intersects(const VarSet& other) const {
  for (int w = 0; w < 4; ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

VarSet VarSet::operator|(const VarSet& o) const {
  VarSet r;
  for (int w = 0; w < 4; ++w) r.words_[w] = words_[w] | o.words_[w];
  return r;
}

VarSet VarSet::operator&(const VarSet& o) const {
  VarSet r;
  for (int w = 0; w < 4; ++w) r.words_[w] = words_[w] & o.words_[w];
  return r;
}

VarSet VarSet::operator^(const VarSet& o) const {
  VarSet r;
  for (int w = 0; w < 4; ++w) r.words_[w] = words_[w] ^ o.words_[w];
  return r;
}

VarSet VarSet::without(const VarSet& o) const {
  VarSet r;
  for (int w = 0; w < 4; ++w) r.words_[w] = words_[w] & ~o.words_[w];
  return r;
}

bool VarSet::operator<(const VarSet& o) const {
  const int a = size(), b = o.size();
  if (a != b) return a < b;
  return members() < o.members();
}

std::size_t VarSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string to_string(const VarSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s.members()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

PBPoly::PBPoly(double constant) {
  if (constant != 0.0) terms_.emplace(VarSet{}, constant);
}

PBPoly PBPoly::variable(int var) {
  PBPoly p;
  VarSet s;
  s.insert(var);
  p.terms_.emplace(s, 1.0);
  return p;
}

PBPoly PBPoly::monomial(const VarSet& vars, double coeff) {
  PBPoly p;
  p.add_term(vars, coeff);
  return p;
}

std::vector<std::pair<VarSet, double>> PBPoly::sorted_terms() const {
  std::vector<std::pair<VarSet, double>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

bool PBPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

double PBPoly::constant() const { return coeff(VarSet{}); }

double PBPoly::coeff(const VarSet& vars) const {
  auto it = terms_.find(vars);
  return it == terms_.end() ? 0.0 : it->second;
}

int PBPoly::degree() const {
  int d = 0;
  for (const auto& [s, c] : terms_) d = std::max(d, s.size());
  return d;
}

int PBPoly::extent() const {
  int e = 0;
  for (const auto& [s, c] : terms_) e = std::max(e, s.extent());
  return e;
}

VarSet PBPoly::support() const {
  VarSet all;
  for (const auto& [s, c] : terms_) all = all | s;
  return all;
}

void PBPoly::add_term(const VarSet& vars, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(vars, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

PBPoly& PBPoly::operator+=(const PBPoly& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, c);
  return *this;
}

PBPoly& PBPoly::operator-=(const PBPoly& o) {
  for (const auto& [s, c] : o.terms_) add_term(s, -c);
  return *this;
}

PBPoly& PBPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

PBPoly& PBPoly::operator*=(const PBPoly& o) {
  *this = *this * o;
  return *this;
}

PBPoly operator*(const PBPoly& a, const PBPoly& b) {
  PBPoly r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) r.add_term(sa | sb, ca * cb);
  }
  return r;
}

void PBPoly::prune(double relative_tol) {
  double scale = 0.0;
  for (const auto& [s, c] : terms_) scale = std::max(scale, std::abs(c));
  const double cut = relative_tol * scale;
  std::erase_if(terms_, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
}

double PBPoly::evaluate(std::span<const std::uint8_t> bits) const {
  const int need = extent();
  if (static_cast<int>(bits.size()) < need) throw std::invalid_argument("bitstring shorter than polynomial support");
  VarSet ones;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) ones.insert(static_cast<int>(k));
  }
  double e = 0.0;
  for (const auto& [s, c] : terms_) {
    if (s.subset_of(ones)) e += c;
  }
  return e;
}

double PBPoly::evaluate_mask(std::uint64_t bits) const {
  double e = 0.0;
  for (const auto& [s, c] : terms_) {
    const std::uint64_t m = s.mask();
    if ((m & bits) == m) e += c;
  }
  return e;
}

PBPoly PBPoly::restrict(const VarSet& fixed, const VarSet& values) const {
  const VarSet zeros = fixed.without(values);
  PBPoly r;
  for (const auto& [s, c] : terms_) {
    if (s.intersects(zeros)) continue;
    r.add_term(s.without(fixed), c);
  }
  return r;
}

bool PBPoly::approx_equal(const PBPoly& o, double tol) const {
  for (const auto& [s, c] : terms_) {
    if (std::abs(c - o.coeff(s)) > tol) return false;
  }
  for (const auto& [s, c] : o.terms_) {
    if (std::abs(c - coeff(s)) > tol) return false;
  }
  return true;
}

std::vector<double> energy_table(const PBPoly& poly, int n) {
  if (n < 0 || n > 30) throw std::invalid_argument("energy table supports at most 30 variables");
  if (poly.extent() > n) throw std::invalid_argument("polynomial has variables beyond the table width");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> table(dim, 0.0);
  for (const auto& [s, c] : poly.terms()) table[s.mask()] += c;
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < dim; ++x) {
      if (x & bit) table[x] += table[x ^ bit];
    }
  }
  return table;
}

}  // namespace latfold
