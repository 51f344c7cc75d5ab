#include "latfold/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace latfold {

namespace {

PBPoly bit_poly(const BitRef& ref) {
  return ref.fixed() ? PBPoly(static_cast<double>(ref.value)) : PBPoly::variable(ref.qubit);
}

std::string pair_name(BeadId a, BeadId b) { return "(" + to_string(a) + "," + to_string(b) + ")"; }

int class1_count(const RegisterLayout& layout, BeadId a, BeadId b) {
  int n = 0;
  for (const auto& r : layout.peptide().neighbors(b)) {
    if (layout.nn1_index(a, r)) ++n;
  }
  return n;
}

}  // namespace

double Penalties::lambda1(BeadId a, BeadId b) const {
  if (b < a) std::swap(a, b);
  auto it = l1.find({a, b});
  if (it == l1.end()) throw std::out_of_range("no order-1 penalty for pair " + pair_name(a, b));
  return it->second;
}

bool LambdaAudit::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) { return c.ok(); });
}

std::vector<AuditCheck> LambdaAudit::failures() const {
  std::vector<AuditCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out), [](const AuditCheck& c) { return !c.ok(); });
  return out;
}

EnergyScale energy_scale(const RegisterLayout& layout, const InteractionModel& model) {
  EnergyScale s;
  const auto& pep = layout.peptide();
  for (const auto& [a, b] : layout.pairs(1)) {
    const double e = std::abs(model.epsilon(pep, a, b, 1));
    s.max_abs = std::max(s.max_abs, e);
    s.bonus_bound += e;
  }
  if (layout.max_l() >= 2) {
    for (const auto& [a, b] : layout.pairs(2)) {
      const double e = std::abs(model.epsilon(pep, a, b, 2));
      s.max_abs = std::max(s.max_abs, e);
      s.bonus_bound += e * (1 + class1_count(layout, a, b));
    }
  }
  return s;
}

Penalties resolve_penalties(const RegisterLayout& layout, const InteractionModel& model, const PenaltyConfig& cfg) {
  const auto& pep = layout.peptide();
  const EnergyScale es = energy_scale(layout, model);
  const double scale = es.max_abs > 0.0 ? es.max_abs : 1.0;

  Penalties p;
  p.l2 = cfg.lambda_2.value_or(10.0 * scale);
  p.l3 = cfg.lambda_3.value_or(p.l2);
  p.l5 = cfg.lambda_5.value_or(p.l2);
  for (const auto& [a, b] : layout.pairs(1)) {
    const double eps = std::abs(model.epsilon(pep, a, b, 1));
    const int sep = pep.bond_separation(a, b);
    p.l1[{a, b}] = cfg.lambda_1.value_or(6.0 * (sep + 1) * p.l2 + eps + p.l2);
  }
  const double constraint = std::max(50.0 * scale, es.bonus_bound + scale);
  p.back = cfg.lambda_back.value_or(constraint);
  p.chirality = cfg.lambda_chirality.value_or(constraint);

  double onehot = 50.0 * scale;
  for (const auto& [a, b] : layout.pairs(1)) {
    onehot += p.lambda1(a, b) + 24.0 * p.l2 + std::abs(model.epsilon(pep, a, b, 1));
  }
  if (layout.max_l() >= 2) {
    for (const auto& c : layout.contacts()) {
      if (c.order == 2) onehot += 2.0 * p.l2 + std::abs(model.epsilon(pep, c.a, c.b, 2));
    }
    for (const auto& [a, b] : layout.pairs(2)) {
      onehot += class1_count(layout, a, b) * std::abs(model.epsilon(pep, a, b, 2));
    }
  }
  p.onehot = cfg.lambda_onehot.value_or(onehot);
  return p;
}

LambdaAudit audit_penalties(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p) {
  LambdaAudit audit;
  const auto& pep = layout.peptide();
  const EnergyScale es = energy_scale(layout, model);
  for (const auto& [a, b] : layout.pairs(1)) {
    const double eps = std::abs(model.epsilon(pep, a, b, 1));
    const int sep = pep.bond_separation(a, b);
    audit.checks.push_back({"lambda_1" + pair_name(a, b) + " > 6(sep+1) lambda_2 + |eps|", p.lambda1(a, b),
                            6.0 * (sep + 1) * p.l2 + eps});
  }
  if (layout.max_l() >= 2 && !layout.pairs(2).empty()) {
    double max2 = 0.0;
    for (const auto& [a, b] : layout.pairs(2)) max2 = std::max(max2, std::abs(model.epsilon(pep, a, b, 2)));
    audit.checks.push_back({"2 lambda_2 > |eps_2|", 2.0 * p.l2, max2});
    audit.checks.push_back({"4 min(lambda_3, lambda_5) > |eps_2|", 4.0 * std::min(p.l3, p.l5), max2});
    double overlap = 0.0;
    bool first = true;
    for (const auto& c : layout.contacts()) {
      if (c.order != 2) continue;
      double s = 0.0;
      for (int t : c.targets) s += p.lambda_target(t) * (1 - t) * (1 - t);
      overlap = first ? s : std::min(overlap, s);
      first = false;
    }
    audit.checks.push_back({"overlap class penalty - 2 lambda_2 > |eps_2|", overlap - 2.0 * p.l2, max2});
  }
  audit.checks.push_back({"lambda_back > interaction bonus bound", p.back, es.bonus_bound});
  if (pep.has_any_side_chain()) {
    audit.checks.push_back({"lambda_chirality > interaction bonus bound", p.chirality, es.bonus_bound});
  }
  if (layout.scheme().kind == Encoding::kSparse) {
    double bound = 0.0;
    for (const auto& [a, b] : layout.pairs(1)) {
      bound += p.lambda1(a, b) + 24.0 * p.l2 + std::abs(model.epsilon(pep, a, b, 1));
    }
    for (const auto& c : layout.contacts()) {
      if (c.order == 2) bound += 2.0 * p.l2 + std::abs(model.epsilon(pep, c.a, c.b, 2));
    }
    if (layout.max_l() >= 2) {
      for (const auto& [a, b] : layout.pairs(2)) {
        bound += class1_count(layout, a, b) * std::abs(model.epsilon(pep, a, b, 2));
      }
    }
    audit.checks.push_back({"lambda_onehot > non-one-hot bonus bound", p.onehot, bound});
  }
  return audit;
}

GeometryPolys::GeometryPolys(const RegisterLayout& layout) : layout_(&layout) {}

const PBPoly& GeometryPolys::indicator(int axis, TurnSlot slot) {
  auto key = std::pair{slot, axis};
  if (auto it = indicators_.find(key); it != indicators_.end()) return it->second;
  const auto& reg = layout_->turn(slot);
  PBPoly f;
  if (layout_->scheme().kind == Encoding::kSparse) {
    f = bit_poly(reg.bits[axis]);
  } else {
    const PBPoly p = bit_poly(reg.bits[0]);
    const PBPoly q = bit_poly(reg.bits[1]);
    const PBPoly one(1.0);
    switch (axis) {
      case 0: f = (one - p) * (one - q); break;
      case 1: f = q * (q - p); break;
      case 2: f = p * (p - q); break;
      case 3: f = p * q; break;
      default: throw std::out_of_range("axis must be 0..3");
    }
  }
  return indicators_.emplace(key, std::move(f)).first->second;
}

const PBPoly& GeometryPolys::position(int axis, BeadId bead) {
  auto key = std::pair{bead, axis};
  if (auto it = positions_.find(key); it != positions_.end()) return it->second;
  PBPoly pos;
  if (bead.side) {
    pos = position(axis, {bead.main, false}) + bond_sign(bead.main) * indicator(axis, {bead.main, true});
  } else if (bead.main > 1) {
    const int k = bead.main - 1;
    pos = position(axis, {k, false}) + bond_sign(k) * indicator(axis, {k, false});
  }
  return positions_.emplace(key, std::move(pos)).first->second;
}

PBPoly GeometryPolys::delta_n(int axis, BeadId a, BeadId b) { return position(axis, b) - position(axis, a); }

const PBPoly& GeometryPolys::distance(BeadId a, BeadId b) {
  if (b < a) std::swap(a, b);
  auto key = std::pair{a, b};
  if (auto it = distances_.find(key); it != distances_.end()) return it->second;
  PBPoly d;
  for (int axis = 0; axis < 4; ++axis) {
    const PBPoly dn = delta_n(axis, a, b);
    d += dn * dn;
  }
  return distances_.emplace(key, std::move(d)).first->second;
}

PBPoly turn_indicator_poly(int axis, TurnSlot slot, const RegisterLayout& layout) {
  GeometryPolys g(layout);
  return g.indicator(axis, slot);
}

PBPoly delta_n_poly(int axis, BeadId a, BeadId b, const RegisterLayout& layout) {
  GeometryPolys g(layout);
  return g.delta_n(axis, a, b);
}

PBPoly distance_poly(BeadId a, BeadId b, const RegisterLayout& layout) {
  GeometryPolys g(layout);
  return g.distance(a, b);
}

PBPoly build_Hgc(const RegisterLayout& layout, const Penalties& p) {
  GeometryPolys g(layout);
  const auto& pep = layout.peptide();
  auto overlap = [&g](TurnSlot x, TurnSlot y) {
    PBPoly t;
    for (int a = 0; a < 4; ++a) t += g.indicator(a, x) * g.indicator(a, y);
    return t;
  };
  PBPoly h;
  for (int k = 1; k + 1 < pep.length(); ++k) h += overlap({k, false}, {k + 1, false});
  for (int k = 2; k < pep.length(); ++k) {
    if (!pep.has_side_chain(k)) continue;
    h += overlap({k - 1, false}, {k, true});
    h += overlap({k, false}, {k, true});
  }
  return h * p.back;
}

PBPoly build_Hch(const RegisterLayout& layout, const Penalties& p) {
  GeometryPolys g(layout);
  const auto& pep = layout.peptide();
  PBPoly h;
  for (int k = 2; k < pep.length(); ++k) {
    if (!pep.has_side_chain(k)) continue;
    for (int a = 0; a < 4; ++a) {
      PBPoly expected;
      for (int prev = 0; prev < 4; ++prev) {
        for (int next = 0; next < 4; ++next) {
          if (prev == next || chirality_side_turn(prev, next, k) != a) continue;
          expected += g.indicator(prev, {k - 1, false}) * g.indicator(next, {k, false});
        }
      }
      h += (PBPoly(1.0) - g.indicator(a, {k, true})) * expected;
    }
  }
  return h * p.chirality;
}

PBPoly build_Honehot(const RegisterLayout& layout, const Penalties& p) {
  if (layout.scheme().kind != Encoding::kSparse) throw std::invalid_argument("one-hot penalty applies to the sparse encoding only");
  PBPoly h;
  for (const auto& reg : layout.turns()) {
    if (reg.fixed()) continue;
    PBPoly s(-1.0);
    for (const auto& bit : reg.bits) s += bit_poly(bit);
    h += s * s;
  }
  return h * p.onehot;
}

PBPoly build_H1(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p) {
  GeometryPolys g(layout);
  const auto& pep = layout.peptide();
  PBPoly h;
  for (const auto& c : layout.contacts()) {
    if (c.order != 1) continue;
    const double l1 = p.lambda1(c.a, c.b);
    PBPoly bracket(model.epsilon(pep, c.a, c.b, 1));
    bracket += l1 * (g.distance(c.a, c.b) - PBPoly(1.0));
    for (const auto& r : pep.neighbors(c.b)) bracket += p.l2 * (PBPoly(2.0) - g.distance(c.a, r));
    for (const auto& m : pep.neighbors(c.a)) bracket += p.l2 * (PBPoly(2.0) - g.distance(m, c.b));
    h += PBPoly::variable(c.index) * bracket;
  }
  return h;
}

PBPoly build_H2(const RegisterLayout& layout, const InteractionModel& model, const Penalties& p) {
  PBPoly h;
  if (layout.max_l() < 2) return h;
  GeometryPolys g(layout);
  const auto& pep = layout.peptide();
  for (const auto& [a, b] : layout.pairs(2)) {
    const double eps = model.epsilon(pep, a, b, 2);
    for (const auto& r : pep.neighbors(b)) {
      if (auto q = layout.nn1_index(a, r)) h += eps * PBPoly::variable(*q);
    }
  }
  for (const auto& c : layout.contacts()) {
    if (c.order != 2) continue;
    const auto neighbours = pep.neighbors(c.b);
    PBPoly guard(1.0);
    for (const auto& r : neighbours) {
      if (auto q = layout.nn1_index(c.a, r)) guard *= PBPoly(1.0) - PBPoly::variable(*q);
    }
    PBPoly bracket(model.epsilon(pep, c.a, c.b, 2));
    bracket += p.l2 * (g.distance(c.a, c.b) - PBPoly(2.0));
    for (std::size_t k = 0; k < neighbours.size(); ++k) {
      const int t = c.targets[k];
      const PBPoly dev = g.distance(c.a, neighbours[k]) - PBPoly(static_cast<double>(t));
      bracket += p.lambda_target(t) * (dev * dev);
    }
    h += PBPoly::variable(c.index) * guard * bracket;
  }
  return h;
}

Hamiltonian assemble(const RegisterLayout& layout, const InteractionModel& model, const PenaltyConfig& cfg) {
  if (model.max_l() > layout.max_l()) throw std::invalid_argument("interaction order exceeds the register layout");
  for (const auto& pen : {cfg.lambda_back, cfg.lambda_chirality, cfg.lambda_onehot, cfg.lambda_1, cfg.lambda_2,
                          cfg.lambda_3, cfg.lambda_5}) {
    if (pen && !(*pen > 0.0)) throw std::invalid_argument("penalty weights must be positive");
  }
  Hamiltonian h{layout, model, resolve_penalties(layout, model, cfg), {}, {}, {}, {}, {}, {}, {}};
  h.audit = audit_penalties(layout, model, h.penalties);
  if (cfg.audit && !h.audit.passed()) {
    std::ostringstream msg;
    msg << "penalty audit failed:";
    for (const auto& f : h.audit.failures()) msg << "\n  " << f.name << " (" << f.lhs << " <= " << f.rhs << ")";
    throw std::invalid_argument(msg.str());
  }
  h.gc = build_Hgc(layout, h.penalties);
  h.ch = build_Hch(layout, h.penalties);
  if (layout.scheme().kind == Encoding::kSparse) h.onehot = build_Honehot(layout, h.penalties);
  h.h1 = build_H1(layout, model, h.penalties);
  h.h2 = build_H2(layout, model, h.penalties);
  for (auto* part : {&h.gc, &h.ch, &h.onehot, &h.h1, &h.h2}) part->prune();
  h.total = h.gc + h.ch + h.onehot + h.h1 + h.h2;
  h.total.prune();
  return h;
}

Hamiltonian assemble(const Peptide& peptide, EncodingScheme scheme, const InteractionModel& model,
                     const PenaltyConfig& cfg, bool q6_saving) {
  return assemble(build_layout(peptide, scheme, model.max_l(), q6_saving), model, cfg);
}

}  // namespace latfold
