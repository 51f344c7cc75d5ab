#include "latfold/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace latfold {

namespace {

constexpr int kFirstTurn = 1;
constexpr int kSecondTurn = 0;

std::array<std::uint8_t, 2> dense_bits(int axis) {
  return {static_cast<std::uint8_t>(axis >> 1), static_cast<std::uint8_t>(axis & 1)};
}

std::vector<BitRef> constant_bits(int axis, Encoding kind) {
  std::vector<BitRef> bits;
  if (kind == Encoding::kDense) {
    for (auto b : dense_bits(axis)) bits.push_back({-1, b});
  } else {
    for (int a = 0; a < 4; ++a) bits.push_back({-1, static_cast<std::uint8_t>(a == axis)});
  }
  return bits;
}

std::vector<BitRef> free_bits(int& next, Encoding kind) {
  const int width = kind == Encoding::kDense ? 2 : 4;
  std::vector<BitRef> bits;
  for (int k = 0; k < width; ++k) bits.push_back({next++, 0});
  return bits;
}

std::vector<std::vector<int>> neighbour_targets(std::size_t count) {
  switch (count) {
    case 1: return {{3}, {5}};
    case 2: return {{3, 3}, {3, 5}, {5, 3}};
    case 3: return {{3, 3, 5}, {3, 5, 3}, {5, 3, 3}};
    default: throw std::logic_error("unexpected neighbour count");
  }
}

std::uint8_t bit_value(const BitRef& ref, std::span<const std::uint8_t> bits) {
  return ref.fixed() ? ref.value : bits[ref.qubit];
}

}  // namespace

std::string to_string(Encoding kind) { return kind == Encoding::kSparse ? "sparse" : "dense"; }

Encoding parse_encoding(std::string_view name) {
  if (name == "sparse") return Encoding::kSparse;
  if (name == "dense") return Encoding::kDense;
  throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

std::string to_string(TurnSlot slot) {
  return "t" + std::to_string(slot.host) + (slot.side ? "s" : "");
}

bool TurnRegister::fixed() const {
  return std::all_of(bits.begin(), bits.end(), [](const BitRef& b) { return b.fixed(); });
}

std::string ContactQubit::label() const {
  std::string out = "q" + std::to_string(order) + "_" + to_string(a) + "," + to_string(b);
  if (!targets.empty()) {
    out += "[";
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(targets[k]);
    }
    out += "]";
  }
  return out;
}

const TurnRegister& RegisterLayout::turn(TurnSlot slot) const {
  for (const auto& reg : turns_) {
    if (reg.slot == slot) return reg;
  }
  throw std::out_of_range("no turn register for " + to_string(slot));
}

std::optional<TurnSlot> RegisterLayout::slot_of(BeadId from, BeadId to) const {
  if (to < from) std::swap(from, to);
  if (!from.side && !to.side && to.main == from.main + 1) return TurnSlot{from.main, false};
  if (!from.side && to.side && to.main == from.main) return TurnSlot{from.main, true};
  return std::nullopt;
}

std::optional<int> RegisterLayout::nn1_index(BeadId a, BeadId b) const {
  if (b < a) std::swap(a, b);
  for (const auto& c : contacts_) {
    if (c.order == 1 && c.a == a && c.b == b) return c.index;
  }
  return std::nullopt;
}

std::vector<std::pair<BeadId, BeadId>> RegisterLayout::pairs(int order) const {
  std::vector<std::pair<BeadId, BeadId>> out;
  const auto& beads = peptide_.beads();
  for (std::size_t x = 0; x < beads.size(); ++x) {
    for (std::size_t y = x + 1; y < beads.size(); ++y) {
      if (admissible_pair(peptide_, beads[x], beads[y], order)) out.emplace_back(beads[x], beads[y]);
    }
  }
  return out;
}

std::vector<std::string> RegisterLayout::qubit_labels() const {
  std::vector<std::string> labels(n_qubits());
  for (const auto& reg : turns_) {
    for (std::size_t k = 0; k < reg.bits.size(); ++k) {
      if (!reg.bits[k].fixed()) labels[reg.bits[k].qubit] = to_string(reg.slot) + "." + std::to_string(k);
    }
  }
  for (const auto& c : contacts_) labels[c.index] = c.label();
  return labels;
}

bool admissible_pair(const Peptide& peptide, BeadId a, BeadId b, int order) {
  const int sep = peptide.bond_separation(a, b);
  if (order == 1) return sep >= 5 && sep % 2 == 1;
  if (order == 2) return sep >= 4 && sep % 2 == 0;
  return false;
}

RegisterLayout build_layout(const Peptide& peptide, EncodingScheme scheme, int max_l, bool q6_saving) {
  if (max_l < 1 || max_l > 2) throw std::invalid_argument("interaction order must be 1 or 2");
  if (peptide.length() < 4) throw std::invalid_argument("a fold job needs at least 4 main-chain beads");
  if (q6_saving) {
    if (scheme.kind != Encoding::kDense) throw std::invalid_argument("q6 saving applies to the dense encoding only");
    if (peptide.has_side_chain(2)) throw std::invalid_argument("q6 saving requires bead 2 without a side chain");
  }

  RegisterLayout layout;
  layout.peptide_ = peptide;
  layout.scheme_ = scheme;
  layout.max_l_ = max_l;
  layout.q6_saving_ = q6_saving;

  const Encoding kind = scheme.kind;
  int next = 0;
  for (int k = 1; k < peptide.length(); ++k) {
    TurnRegister main{{k, false}, {}, {}};
    if (k == 1) {
      main.bits = constant_bits(kFirstTurn, kind);
      main.allowed = {kFirstTurn};
    } else if (k == 2) {
      main.bits = constant_bits(kSecondTurn, kind);
      main.allowed = {kSecondTurn};
    } else if (k == 3 && q6_saving) {
      main.bits = {{next++, 0}, {-1, 1}};
      main.allowed = {1, 3};
    } else {
      main.bits = free_bits(next, kind);
      main.allowed = {0, 1, 2, 3};
    }
    layout.turns_.push_back(std::move(main));
    if (peptide.has_side_chain(k)) {
      layout.turns_.push_back({{k, true}, free_bits(next, kind), {0, 1, 2, 3}});
    }
  }
  layout.n_conf_ = next;

  std::vector<ContactQubit> contacts;
  for (int order = 1; order <= max_l; ++order) {
    for (const auto& [a, b] : layout.pairs(order)) {
      if (order == 1) {
        contacts.push_back({1, a, b, {}, -1});
        continue;
      }
      for (auto& t : neighbour_targets(peptide.neighbors(b).size())) {
        contacts.push_back({2, a, b, std::move(t), -1});
      }
    }
  }
  std::sort(contacts.begin(), contacts.end(), [](const ContactQubit& x, const ContactQubit& y) {
    return std::tie(x.order, x.a, x.b, x.targets) < std::tie(y.order, y.a, y.b, y.targets);
  });
  for (auto& c : contacts) c.index = next++;
  layout.contacts_ = std::move(contacts);
  return layout;
}

int turn_indicator(int axis, std::span<const std::uint8_t> turn_bits, Encoding kind) {
  if (kind == Encoding::kSparse) return turn_bits[axis] ? 1 : 0;
  const int p = turn_bits[0], q = turn_bits[1];
  switch (axis) {
    case 0: return (1 - p) * (1 - q);
    case 1: return q * (q - p);
    case 2: return p * (p - q);
    case 3: return p * q;
    default: throw std::out_of_range("axis must be 0..3");
  }
}

int TurnSequence::turn(TurnSlot slot) const {
  return slot.side ? side.at(slot.host - 1) : main.at(slot.host - 1);
}

std::string to_string(const TurnSequence& turns) {
  std::string out;
  for (std::size_t k = 0; k < turns.main.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(turns.main[k]);
    if ((k + 1) % 2 == 1) out += '\'';
    if (k < turns.side.size() && turns.side[k] >= 0) out += "(" + std::to_string(turns.side[k]) + ")";
  }
  return out;
}

DecodedTurns decode(std::span<const std::uint8_t> bits, const RegisterLayout& layout) {
  if (bits.size() != static_cast<std::size_t>(layout.n_conf()) &&
      bits.size() != static_cast<std::size_t>(layout.n_qubits())) {
    throw std::invalid_argument("bitstring length does not match the register layout");
  }
  const int n = layout.peptide().length();
  DecodedTurns out;
  out.turns.main.assign(n - 1, -1);
  out.turns.side.assign(n, -1);
  const Encoding kind = layout.scheme().kind;
  for (const auto& reg : layout.turns()) {
    std::array<std::uint8_t, 4> local{};
    for (std::size_t k = 0; k < reg.bits.size(); ++k) local[k] = bit_value(reg.bits[k], bits);
    const std::span<const std::uint8_t> view(local.data(), reg.bits.size());
    int axis = -1;
    int fired = 0;
    for (int a = 0; a < 4; ++a) {
      if (turn_indicator(a, view, kind)) {
        axis = a;
        ++fired;
      }
    }
    if (fired != 1) {
      out.valid = false;
      out.invalid.push_back(reg.slot);
      axis = -1;
    }
    (reg.slot.side ? out.turns.side[reg.slot.host - 1] : out.turns.main[reg.slot.host - 1]) = axis;
  }
  return out;
}

Bits encode(const TurnSequence& turns, const RegisterLayout& layout) {
  if (static_cast<int>(turns.main.size()) != layout.peptide().length() - 1) {
    throw std::invalid_argument("turn count does not match chain length");
  }
  Bits bits(layout.n_conf(), 0);
  const Encoding kind = layout.scheme().kind;
  for (const auto& reg : layout.turns()) {
    const int axis = turns.turn(reg.slot);
    if (axis < 0 || axis > 3) throw std::invalid_argument("turn sequence is missing " + to_string(reg.slot));
    std::vector<std::uint8_t> want;
    if (kind == Encoding::kDense) {
      auto d = dense_bits(axis);
      want.assign(d.begin(), d.end());
    } else {
      for (int a = 0; a < 4; ++a) want.push_back(a == axis);
    }
    for (std::size_t k = 0; k < reg.bits.size(); ++k) {
      const auto& ref = reg.bits[k];
      if (ref.fixed()) {
        if (ref.value != want[k]) throw std::invalid_argument("turn " + to_string(reg.slot) + " conflicts with fixed bits");
      } else {
        bits[ref.qubit] = want[k];
      }
    }
  }
  return bits;
}

int Conformation::index_of(BeadId bead) const {
  auto it = std::lower_bound(beads_.begin(), beads_.end(), bead);
  if (it == beads_.end() || *it != bead) throw std::out_of_range("bead " + to_string(bead) + " not in conformation");
  return static_cast<int>(it - beads_.begin());
}

Conformation grow(const TurnSequence& turns, const Peptide& peptide) {
  const int n = peptide.length();
  if (static_cast<int>(turns.main.size()) != n - 1) throw std::invalid_argument("turn count does not match chain length");
  Conformation c;
  c.turns_ = turns;
  c.beads_ = peptide.beads();
  c.species_.reserve(c.beads_.size());
  for (const auto& b : c.beads_) c.species_.push_back(peptide.species(b));
  c.counts_.resize(c.beads_.size());
  c.coords_.resize(c.beads_.size());

  auto step = [](TurnCount count, Vec3i pos, int host, int axis) {
    if (axis < 0 || axis > 3) throw std::invalid_argument("invalid turn axis");
    const int s = bond_sign(host);
    count[axis] += s;
    pos.x += s * kAxes[axis].x;
    pos.y += s * kAxes[axis].y;
    pos.z += s * kAxes[axis].z;
    return std::pair{count, pos};
  };

  TurnCount count{};
  Vec3i pos{};
  for (int k = 1; k <= n; ++k) {
    const int idx = peptide.bead_index({k, false});
    c.counts_[idx] = count;
    c.coords_[idx] = pos;
    if (peptide.has_side_chain(k)) {
      const int axis = turns.side.size() >= static_cast<std::size_t>(k) ? turns.side[k - 1] : -1;
      auto [sc, sp] = step(count, pos, k, axis);
      c.counts_[idx + 1] = sc;
      c.coords_[idx + 1] = sp;
    }
    if (k < n) std::tie(count, pos) = step(count, pos, k, turns.main[k - 1]);
  }
  return c;
}

int squared_distance(const Conformation& c, BeadId a, BeadId b) {
  const auto& p = c.position(a);
  const auto& q = c.position(b);
  const int dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  return dx * dx + dy * dy + dz * dz;
}

double euclidean_distance(const Conformation& c, BeadId a, BeadId b) {
  return std::sqrt(squared_distance(c, a, b) / 3.0);
}

int distance_index(const Conformation& c, BeadId a, BeadId b) {
  const auto& p = c.turn_count(a);
  const auto& q = c.turn_count(b);
  int d = 0;
  for (int k = 0; k < 4; ++k) d += (q[k] - p[k]) * (q[k] - p[k]);
  return d;
}

double distance_from_index(int d, int parity_sum) {
  return std::sqrt((4.0 * d - parity_sum * parity_sum) / 3.0);
}

namespace {

constexpr int kChirality[4][4] = {
    {-1, 2, 3, 1},
    {3, -1, 0, 2},
    {1, 3, -1, 0},
    {2, 0, 1, -1},
};

}  // namespace

int chirality_side_turn(int prev_axis, int next_axis, int host) {
  if (prev_axis < 0 || prev_axis > 3 || next_axis < 0 || next_axis > 3) throw std::out_of_range("axis must be 0..3");
  return host % 2 == 0 ? kChirality[prev_axis][next_axis] : kChirality[next_axis][prev_axis];
}

bool chiral(const TurnSequence& turns) {
  for (std::size_t k = 1; k < turns.side.size() && k < turns.main.size(); ++k) {
    if (turns.side[k] < 0) continue;
    if (turns.side[k] != chirality_side_turn(turns.main[k - 1], turns.main[k], static_cast<int>(k) + 1)) return false;
  }
  return true;
}

bool self_avoiding(const Conformation& c) {
  const auto coords = c.coords();
  for (std::size_t x = 0; x < coords.size(); ++x) {
    for (std::size_t y = x + 1; y < coords.size(); ++y) {
      if (coords[x] == coords[y]) return false;
    }
  }
  return true;
}

TurnSpace::TurnSpace(const RegisterLayout& layout) {
  const int n = layout.peptide().length();
  base_.main.assign(n - 1, -1);
  base_.side.assign(n, -1);
  for (const auto& reg : layout.turns()) {
    if (reg.allowed.size() == 1) {
      (reg.slot.side ? base_.side[reg.slot.host - 1] : base_.main[reg.slot.host - 1]) = reg.allowed.front();
      continue;
    }
    slots_.push_back(reg.slot);
    choices_.push_back(reg.allowed);
    if (size_ > (UINT64_MAX / reg.allowed.size())) throw std::overflow_error("turn space too large");
    size_ *= reg.allowed.size();
  }
}

TurnSequence TurnSpace::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("turn-space index out of range");
  TurnSequence t = base_;
  for (std::size_t k = slots_.size(); k-- > 0;) {
    const auto& opts = choices_[k];
    const int axis = opts[index % opts.size()];
    index /= opts.size();
    (slots_[k].side ? t.side[slots_[k].host - 1] : t.main[slots_[k].host - 1]) = axis;
  }
  return t;
}

}  // namespace latfold
