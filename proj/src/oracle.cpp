#include "latfold/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace latfold {

namespace {

constexpr int kNearestSq = 3;
constexpr int kSecondSq = 8;
constexpr int kTableLimit = 24;

struct GroupKey {
  std::vector<ContactKey> contacts;
  bool self_avoiding = true;

  auto operator<=>(const GroupKey&) const = default;
};

struct Group {
  double energy = 0.0;
  std::uint64_t count = 0;
  std::uint64_t first_index = 0;
};

using GroupMap = std::map<GroupKey, Group>;

void enumerate_range(const RegisterLayout& layout, const InteractionModel& model, const TurnSpace& space,
                     std::uint64_t begin, std::uint64_t end, GroupMap& out) {
  const auto& pep = layout.peptide();
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const TurnSequence turns = space.at(idx);
    if (!chiral(turns)) continue;
    const Conformation c = grow(turns, pep);
    GroupKey key{realised_contacts(c, layout), self_avoiding(c)};
    auto [it, inserted] = out.try_emplace(std::move(key));
    if (inserted) {
      double e = 0.0;
      for (const auto& k : it->first.contacts) e += model.epsilon(pep, k.a, k.b, k.order);
      it->second = {e, 0, idx};
    }
    ++it->second.count;
  }
}

Bits bits_of(std::uint64_t mask, int n) {
  Bits b(n);
  for (int k = 0; k < n; ++k) b[k] = (mask >> k) & 1U;
  return b;
}

std::uint64_t mask_of(const Bits& bits) {
  std::uint64_t m = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) m |= std::uint64_t{1} << k;
  }
  return m;
}

// Minimum of the Hamiltonian over the contact register for fixed
// configuration bits, with the set of minimising registers.
class ContactMinimizer {
 public:
  explicit ContactMinimizer(const Hamiltonian& h)
      : h_(h), n_conf_(h.layout.n_conf()), n_int_(h.layout.n_int()) {
    if (n_conf_ + n_int_ > 62) throw std::invalid_argument("instance too large to certify");
    if (n_conf_ + n_int_ <= kTableLimit) table_ = energy_table(h.total, n_conf_ + n_int_);
  }

  struct Result {
    double min = 0.0;
    std::vector<std::uint64_t> argmin;
  };

  Result operator()(std::uint64_t conf, double tol, bool want_argmin) const {
    std::vector<double> values(std::size_t{1} << n_int_);
    if (!table_.empty()) {
      for (std::uint64_t c = 0; c < values.size(); ++c) values[c] = table_[conf | (c << n_conf_)];
    } else {
      VarSet fixed, ones;
      for (int k = 0; k < n_conf_; ++k) {
        fixed.insert(k);
        if ((conf >> k) & 1U) ones.insert(k);
      }
      const PBPoly r = h_.total.restrict(fixed, ones);
      for (std::uint64_t c = 0; c < values.size(); ++c) values[c] = r.evaluate_mask(c << n_conf_);
    }
    Result res;
    res.min = *std::min_element(values.begin(), values.end());
    if (want_argmin) {
      for (std::uint64_t c = 0; c < values.size(); ++c) {
        if (values[c] <= res.min + tol) res.argmin.push_back(c);
      }
    }
    return res;
  }

  double energy(std::uint64_t conf, std::uint64_t contacts) const {
    const std::uint64_t full = conf | (contacts << n_conf_);
    if (!table_.empty()) return table_[full];
    return h_.total.evaluate_mask(full);
  }

 private:
  const Hamiltonian& h_;
  int n_conf_;
  int n_int_;
  std::vector<double> table_;
};

}  // namespace

std::string to_string(const ContactKey& key) {
  return "(" + to_string(key.a) + "," + to_string(key.b) + ")" + (key.order == 2 ? "2" : "");
}

std::vector<ContactKey> realised_contacts(const Conformation& c, const RegisterLayout& layout) {
  std::vector<ContactKey> out;
  for (int order = 1; order <= layout.max_l(); ++order) {
    const int want = order == 1 ? kNearestSq : kSecondSq;
    for (const auto& [a, b] : layout.pairs(order)) {
      if (squared_distance(c, a, b) == want) out.push_back({a, b, order});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double geometric_energy(const Conformation& c, const RegisterLayout& layout, const InteractionModel& model) {
  double e = 0.0;
  for (const auto& k : realised_contacts(c, layout)) e += model.epsilon(layout.peptide(), k.a, k.b, k.order);
  return e;
}

Bits ideal_contact_bits(const Conformation& c, const RegisterLayout& layout) {
  const auto& pep = layout.peptide();
  Bits bits(layout.n_int(), 0);
  const int offset = layout.n_conf();
  for (const auto& q : layout.contacts()) {
    bool on = false;
    if (q.order == 1) {
      on = squared_distance(c, q.a, q.b) == kNearestSq;
    } else if (squared_distance(c, q.a, q.b) == kSecondSq) {
      const auto neighbours = pep.neighbors(q.b);
      on = true;
      for (std::size_t k = 0; k < neighbours.size() && on; ++k) {
        if (layout.nn1_index(q.a, neighbours[k]) && squared_distance(c, q.a, neighbours[k]) == kNearestSq) on = false;
        if (distance_index(c, q.a, neighbours[k]) != q.targets[k]) on = false;
      }
    }
    bits[q.index - offset] = on ? 1 : 0;
  }
  return bits;
}

std::vector<SpectrumEntry> enumerate(const RegisterLayout& layout, const InteractionModel& model,
                                     const OracleOptions& opts) {
  const TurnSpace space(layout);
  if (space.size() > opts.cap) {
    throw std::length_error("turn space of " + std::to_string(space.size()) + " exceeds the enumeration cap of " +
                            std::to_string(opts.cap));
  }
  const int workers = std::max(1, std::min<int>(opts.threads, static_cast<int>(space.size() / 1024) + 1));
  std::vector<GroupMap> parts(workers);
  if (workers == 1) {
    enumerate_range(layout, model, space, 0, space.size(), parts[0]);
  } else {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (space.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t b = std::min(space.size(), w * chunk);
      const std::uint64_t e = std::min(space.size(), b + chunk);
      pool.emplace_back([&, w, b, e] { enumerate_range(layout, model, space, b, e, parts[w]); });
    }
  }
  GroupMap merged;
  for (auto& part : parts) {
    for (auto& [key, g] : part) {
      auto [it, inserted] = merged.try_emplace(key, g);
      if (!inserted) {
        it->second.count += g.count;
        it->second.first_index = std::min(it->second.first_index, g.first_index);
      }
    }
  }
  std::vector<SpectrumEntry> out;
  out.reserve(merged.size());
  for (const auto& [key, g] : merged) {
    SpectrumEntry e;
    e.energy = g.energy;
    e.degeneracy = g.count;
    e.contacts = key.contacts;
    e.self_avoiding = key.self_avoiding;
    e.turns = space.at(g.first_index);
    e.contact_bits = ideal_contact_bits(grow(e.turns, layout.peptide()), layout);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
    if (x.energy != y.energy) return x.energy < y.energy;
    return x.self_avoiding > y.self_avoiding;
  });
  return out;
}

std::vector<double> fold_levels(const std::vector<SpectrumEntry>& spectrum) {
  std::vector<double> levels;
  for (const auto& e : spectrum) {
    if (e.self_avoiding) levels.push_back(e.energy);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
               levels.end());
  return levels;
}

std::optional<SpectrumEntry> ground_entry(const std::vector<SpectrumEntry>& spectrum) {
  for (const auto& e : spectrum) {
    if (e.self_avoiding) return e;
  }
  return std::nullopt;
}

std::string Certificate::summary() const {
  std::ostringstream s;
  s << (passed ? "PASS" : "FAIL") << " ground=" << ground_energy << " self_avoiding=" << self_avoiding_checked
    << " violations=" << violations_checked << (full_sweep ? " (full sweep)" : " (sampled)")
    << " min_violation=" << min_violation_energy << " overlap=" << overlap_checked
    << " overlap_below_ground=" << overlap_below_ground;
  for (const auto& f : failures) s << "\n  " << f.reason << ": H=" << f.hamiltonian << " expected=" << f.expected;
  return s.str();
}

Certificate certify(const Hamiltonian& h, const CertifyOptions& opts) {
  const auto& layout = h.layout;
  const auto& pep = layout.peptide();
  for (int order = 1; order <= layout.max_l(); ++order) {
    for (const auto& [a, b] : layout.pairs(order)) {
      if (h.model.epsilon(pep, a, b, order) > 0.0) {
        throw std::invalid_argument("certification requires non-positive pair energies");
      }
    }
  }
  const int n_conf = layout.n_conf();
  const int n_int = layout.n_int();
  const ContactMinimizer minimise(h);

  std::uint64_t weighted = 0;
  for (const auto& q : layout.contacts()) {
    if (h.model.epsilon(pep, q.a, q.b, q.order) != 0.0) weighted |= std::uint64_t{1} << (q.index - n_conf);
  }

  // An order-2 register bit is idle while one of its 1-NN gates is set.
  std::vector<std::pair<int, std::uint64_t>> gates;
  for (const auto& q : layout.contacts()) {
    if (q.order != 2) continue;
    std::uint64_t g = 0;
    for (BeadId r : pep.neighbors(q.b)) {
      if (auto i = layout.nn1_index(q.a, r)) g |= std::uint64_t{1} << (*i - n_conf);
    }
    if (g) gates.emplace_back(q.index - n_conf, g);
  }
  auto effective = [&gates](std::uint64_t contacts) {
    std::uint64_t out = contacts;
    for (const auto& [bit, g] : gates) {
      if (contacts & g) out &= ~(std::uint64_t{1} << bit);
    }
    return out;
  };

  Certificate cert;
  auto fail = [&](std::uint64_t conf, std::uint64_t contacts, std::string reason, double got, double want) {
    if (cert.failures.size() < opts.max_failures) {
      Bits bits = bits_of(conf, n_conf);
      const Bits c = bits_of(contacts, n_int);
      bits.insert(bits.end(), c.begin(), c.end());
      cert.failures.push_back({std::move(bits), std::move(reason), got, want});
    }
  };

  bool any_ground = false;
  const TurnSpace space(layout);
  if (space.size() > opts.oracle.cap) throw std::length_error("turn space exceeds the enumeration cap");
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    const TurnSequence turns = space.at(idx);
    if (!chiral(turns)) continue;
    const Conformation c = grow(turns, pep);
    if (!self_avoiding(c)) continue;
    const double geo = geometric_energy(c, layout, h.model);
    if (!any_ground || geo < cert.ground_energy) cert.ground_energy = geo;
    any_ground = true;
    ++cert.self_avoiding_checked;
    const std::uint64_t conf = mask_of(encode(turns, layout));
    const std::uint64_t ideal = mask_of(ideal_contact_bits(c, layout));
    const auto res = minimise(conf, opts.tol, true);
    if (std::abs(res.min - geo) > opts.tol) {
      fail(conf, res.argmin.front(), "min over contacts differs from geometric energy", res.min, geo);
      continue;
    }
    const double at_ideal = minimise.energy(conf, ideal);
    if (std::abs(at_ideal - geo) > opts.tol) fail(conf, ideal, "ideal contact register misses the energy", at_ideal, geo);
    for (auto arg : res.argmin) {
      if ((effective(arg) ^ ideal) & weighted) {
        fail(conf, arg, "minimising contact register differs from realised contacts", res.min, geo);
        break;
      }
    }
  }
  if (!any_ground) throw std::runtime_error("instance has no self-avoiding conformation");

  const PBPoly constraints = h.constraints();
  auto check_config = [&](std::uint64_t conf) {
    const double penalty = constraints.evaluate_mask(conf);
    if (penalty > opts.tol) {
      const auto res = minimise(conf, opts.tol, true);
      if (cert.violations_checked == 0 || res.min < cert.min_violation_energy) cert.min_violation_energy = res.min;
      ++cert.violations_checked;
      if (!(res.min > cert.ground_energy + opts.tol)) {
        fail(conf, res.argmin.front(), "constraint violation reaches the ground energy", res.min, cert.ground_energy);
      }
      return;
    }
    const DecodedTurns dec = decode(bits_of(conf, n_conf), layout);
    if (!dec.valid || self_avoiding(grow(dec.turns, pep))) return;
    ++cert.overlap_checked;
    if (minimise(conf, opts.tol, false).min < cert.ground_energy - opts.tol) ++cert.overlap_below_ground;
  };

  if (n_conf <= opts.full_sweep_max_conf) {
    cert.full_sweep = true;
    for (std::uint64_t conf = 0; conf < (std::uint64_t{1} << n_conf); ++conf) check_config(conf);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << n_conf) - 1);
    for (std::uint64_t k = 0; k < opts.violation_samples; ++k) check_config(pick(rng));
  }
  cert.passed = cert.failures.empty();
  return cert;
}

std::vector<double> ground_truth_probability(std::span<const double> sample_energies, std::span<const double> levels,
                                             double tol) {
  if (sample_energies.empty()) throw std::invalid_argument("no samples");
  std::vector<double> p(levels.size(), 0.0);
  for (double e : sample_energies) {
    for (std::size_t f = 0; f < levels.size(); ++f) {
      if (std::abs(e - levels[f]) <= tol) {
        p[f] += 1.0;
        break;
      }
    }
  }
  for (auto& v : p) v /= static_cast<double>(sample_energies.size());
  return p;
}

}  // namespace latfold
