#include "latfold/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace latfold {

namespace {

constexpr int kMaxQubits = 30;
constexpr int kBlockQubits = 12;

void check_width(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in 1..30");
}

struct Rotation {
  double c;
  double s;
};

Rotation half_angle(double theta) { return {std::cos(0.5 * theta), std::sin(0.5 * theta)}; }

// RY on the two index bits b1 < b2 of a contiguous array.
void rotate_two(double* data, std::size_t size, std::size_t b1, std::size_t b2, Rotation r1, Rotation r2) {
  for (std::size_t hi = 0; hi < size; hi += 2 * b2) {
    for (std::size_t mid = hi; mid < hi + b2; mid += 2 * b1) {
      double* __restrict p00 = data + mid;
      double* __restrict p10 = p00 + b1;
      double* __restrict p01 = p00 + b2;
      double* __restrict p11 = p01 + b1;
      for (std::size_t i = 0; i < b1; ++i) {
        const double a00 = p00[i], a10 = p10[i], a01 = p01[i], a11 = p11[i];
        const double x00 = r1.c * a00 - r1.s * a10, x10 = r1.s * a00 + r1.c * a10;
        const double x01 = r1.c * a01 - r1.s * a11, x11 = r1.s * a01 + r1.c * a11;
        p00[i] = r2.c * x00 - r2.s * x01;
        p01[i] = r2.s * x00 + r2.c * x01;
        p10[i] = r2.c * x10 - r2.s * x11;
        p11[i] = r2.s * x10 + r2.c * x11;
      }
    }
  }
}

void rotate_one(double* data, std::size_t size, std::size_t bit, Rotation r) {
  for (std::size_t base = 0; base < size; base += 2 * bit) {
    for (std::size_t i = base; i < base + bit; ++i) {
      const double a0 = data[i], a1 = data[i + bit];
      data[i] = r.c * a0 - r.s * a1;
      data[i + bit] = r.s * a0 + r.c * a1;
    }
  }
}

void rotate_adjacent_01(double* data, std::size_t size, Rotation r0, Rotation r1) {
  for (std::size_t i = 0; i < size; i += 4) {
    const double a0 = data[i], a1 = data[i + 1], a2 = data[i + 2], a3 = data[i + 3];
    const double x0 = r0.c * a0 - r0.s * a1, x1 = r0.s * a0 + r0.c * a1;
    const double x2 = r0.c * a2 - r0.s * a3, x3 = r0.s * a2 + r0.c * a3;
    data[i] = r1.c * x0 - r1.s * x2;
    data[i + 2] = r1.s * x0 + r1.c * x2;
    data[i + 1] = r1.c * x1 - r1.s * x3;
    data[i + 3] = r1.s * x1 + r1.c * x3;
  }
}

// Applies rot[j] on index bit unit << j.
void rotate_range(double* data, std::size_t size, std::size_t unit, std::span<const Rotation> rot) {
  std::size_t j = 0;
  if (unit == 1 && rot.size() >= 2) {
    rotate_adjacent_01(data, size, rot[0], rot[1]);
    j = 2;
  }
  for (; j + 1 < rot.size(); j += 2) rotate_two(data, size, unit << j, unit << (j + 1), rot[j], rot[j + 1]);
  if (j < rot.size()) rotate_one(data, size, unit << j, rot[j]);
}

std::vector<std::pair<int, int>> reversed(std::vector<std::pair<int, int>> gates) {
  std::reverse(gates.begin(), gates.end());
  return gates;
}

}  // namespace

std::string to_string(Entangler e) { return e == Entangler::kRing ? "ring" : "all_to_all"; }

Entangler parse_entangler(std::string_view name) {
  if (name == "ring") return Entangler::kRing;
  if (name == "all_to_all" || name == "all-to-all") return Entangler::kAllToAll;
  throw std::invalid_argument("unknown entangler '" + std::string(name) + "'");
}

std::vector<std::pair<int, int>> entangler_gates(int n, Entangler e) {
  std::vector<std::pair<int, int>> gates;
  if (n < 2) return gates;
  if (e == Entangler::kRing) {
    for (int k = 0; k + 1 < n; ++k) gates.emplace_back(k, k + 1);
    if (n > 2) gates.emplace_back(n - 1, 0);
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) gates.emplace_back(i, j);
    }
  }
  return gates;
}

LinearPermutation::LinearPermutation(int n, std::span<const std::pair<int, int>> cnots) : n_(n) {
  check_width(n);
  std::vector<std::uint64_t> column(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t x = std::uint64_t{1} << i;
    for (const auto& [c, t] : cnots) {
      if ((x >> c) & 1U) x ^= std::uint64_t{1} << t;
    }
    column[i] = x;
  }
  const int bytes = (n + 7) / 8;
  tables_.assign(bytes, std::vector<std::uint64_t>(256, 0));
  for (int b = 0; b < bytes; ++b) {
    for (int v = 0; v < 256; ++v) {
      std::uint64_t y = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const int q = 8 * b + bit;
        if (q < n && ((v >> bit) & 1)) y ^= column[q];
      }
      tables_[b][v] = y;
    }
  }
}

std::uint64_t LinearPermutation::apply(std::uint64_t x) const {
  std::uint64_t y = 0;
  for (std::size_t b = 0; b < tables_.size(); ++b) y ^= tables_[b][(x >> (8 * b)) & 0xFFU];
  return y;
}

AnsatzSimulator::AnsatzSimulator(AnsatzSpec spec)
    : spec_(spec), inverse_(spec.n, reversed(entangler_gates(spec.n, spec.entangler))) {}

void AnsatzSimulator::prepare(std::span<const double> theta, std::vector<double>& out) const {
  const int n = spec_.n;
  if (static_cast<int>(theta.size()) != spec_.parameter_count()) {
    throw std::invalid_argument("angle vector must have 2n entries");
  }
  const int low = std::min(n, kBlockQubits);
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t block = std::size_t{1} << low;
  const std::uint64_t low_mask = block - 1;

  // Blocks are gathered from the low and high factors of the product state.
  thread_local std::vector<double> lo_amp, hi_amp;
  thread_local std::vector<std::uint32_t> lo_idx, hi_idx;
  auto product = [&theta](std::vector<double>& amp, int first, int count) {
    amp.assign(std::size_t{1} << count, 0.0);
    amp[0] = 1.0;
    const double h = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < count; ++k) {
      const auto [c, s] = half_angle(theta[first + k]);
      const double a0 = h * (c - s), a1 = h * (c + s);
      const std::size_t half = std::size_t{1} << k;
      for (std::size_t i = 0; i < half; ++i) {
        amp[i + half] = amp[i] * a1;
        amp[i] *= a0;
      }
    }
  };
  product(lo_amp, 0, low);
  product(hi_amp, low, n - low);
  lo_idx.resize(block);
  hi_idx.resize(block);
  for (std::uint64_t y = 0; y < block; ++y) {
    const std::uint64_t z = inverse_.apply(y);
    lo_idx[y] = static_cast<std::uint32_t>(z & low_mask);
    hi_idx[y] = static_cast<std::uint32_t>(z >> low);
  }

  std::vector<Rotation> rot(n);
  for (int k = 0; k < n; ++k) rot[k] = half_angle(theta[n + k]);
  out.resize(dim);
  for (std::size_t base = 0; base < dim; base += block) {
    const std::uint64_t z = inverse_.apply(base);
    const std::uint64_t zl = z & low_mask, zh = z >> low;
    double* dst = out.data() + base;
    for (std::size_t y = 0; y < block; ++y) dst[y] = lo_amp[zl ^ lo_idx[y]] * hi_amp[zh ^ hi_idx[y]];
    rotate_range(dst, block, 1, std::span(rot).first(low));
  }
  if (low < n) rotate_range(out.data(), dim, block, std::span(rot).subspan(low));
}

std::vector<double> AnsatzSimulator::prepare(std::span<const double> theta) const {
  std::vector<double> out;
  prepare(theta, out);
  return out;
}

std::vector<double> prepare_state(const AnsatzSpec& spec, std::span<const double> theta) {
  return AnsatzSimulator(spec).prepare(theta);
}

void apply_ry(std::vector<double>& state, int qubit, double angle) {
  const auto [c, s] = half_angle(angle);
  const std::size_t bit = std::size_t{1} << qubit;
  if (bit >= state.size() || state.size() % (2 * bit)) throw std::invalid_argument("qubit outside state");
  for (std::size_t base = 0; base < state.size(); base += 2 * bit) {
    for (std::size_t i = base; i < base + bit; ++i) {
      const double a0 = state[i], a1 = state[i + bit];
      state[i] = c * a0 - s * a1;
      state[i + bit] = s * a0 + c * a1;
    }
  }
}

void apply_cnot(std::vector<double>& state, int control, int target) {
  const std::size_t cb = std::size_t{1} << control, tb = std::size_t{1} << target;
  if (control == target || cb >= state.size() || tb >= state.size()) throw std::invalid_argument("bad CNOT qubits");
  for (std::size_t i = 0; i < state.size(); ++i) {
    if ((i & cb) && !(i & tb)) std::swap(state[i], state[i | tb]);
  }
}

std::uint64_t SampleBatch::shots() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(mix_seed(mix_seed(base) ^ a) ^ b) ^ c);
}

SampleBatch sample(std::span<const double> amplitudes, int n_qubits, std::uint32_t shots, std::uint64_t seed) {
  if (amplitudes.size() != (std::size_t{1} << n_qubits)) throw std::invalid_argument("state size does not match qubits");
  if (shots == 0) throw std::invalid_argument("need at least one shot");
  std::mt19937_64 rng(seed);
  double total = 0.0;
  for (double a : amplitudes) total += a * a;
  std::vector<double> u(shots);
  for (auto& x : u) x = unit_uniform(rng()) * total;
  std::sort(u.begin(), u.end());

  SampleBatch batch;
  batch.n_qubits = n_qubits;
  double cum = 0.0;
  std::size_t next = 0;
  std::uint64_t last_nonzero = 0;
  constexpr std::size_t kChunk = 64;
  for (std::size_t start = 0; start < amplitudes.size() && next < u.size(); start += kChunk) {
    const std::size_t stop = std::min(amplitudes.size(), start + kChunk);
    double chunk = 0.0;
    for (std::size_t x = start; x < stop; ++x) chunk += amplitudes[x] * amplitudes[x];
    if (chunk == 0.0) continue;
    if (cum + chunk < u[next]) {
      cum += chunk;
      for (std::size_t x = stop; x-- > start;) {
        if (amplitudes[x] != 0.0) {
          last_nonzero = x;
          break;
        }
      }
      continue;
    }
    for (std::size_t x = start; x < stop && next < u.size(); ++x) {
      const double p = amplitudes[x] * amplitudes[x];
      if (p == 0.0) continue;
      last_nonzero = x;
      cum += p;
      std::uint32_t hits = 0;
      while (next < u.size() && u[next] < cum) {
        ++hits;
        ++next;
      }
      if (hits) {
        batch.bitstrings.push_back(x);
        batch.counts.push_back(hits);
      }
    }
  }
  if (next < u.size()) {
    // Rounding left the cumulative sum just below the total.
    const auto rest = static_cast<std::uint32_t>(u.size() - next);
    if (!batch.bitstrings.empty() && batch.bitstrings.back() == last_nonzero) {
      batch.counts.back() += rest;
    } else {
      batch.bitstrings.push_back(last_nonzero);
      batch.counts.push_back(rest);
    }
  }
  return batch;
}

}  // namespace latfold
