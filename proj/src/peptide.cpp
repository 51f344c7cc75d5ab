#include "latfold/peptide.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace latfold {

std::string to_string(BeadId bead) {
  return std::to_string(bead.main) + (bead.side ? "s" : "");
}

BeadId parse_bead(std::string_view token) {
  BeadId bead;
  if (!token.empty() && (token.back() == 's' || token.back() == 'S')) {
    bead.side = true;
    token.remove_suffix(1);
  }
  if (token.empty() || !std::all_of(token.begin(), token.end(),
                                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("malformed bead label");
  }
  bead.main = std::stoi(std::string(token));
  if (bead.main < 1) throw std::invalid_argument("bead positions start at 1");
  return bead;
}

Sublattice sublattice(BeadId bead) {
  const bool odd = bead.main % 2 != 0;
  // A side-chain bead is one bond away from its host.
  return (odd != bead.side) ? Sublattice::kB : Sublattice::kA;
}

Peptide::Peptide(std::string main_chain, std::vector<char> side_chains)
    : main_(std::move(main_chain)), side_(std::move(side_chains)) {
  if (side_.empty()) side_.assign(main_.size(), '\0');
  if (side_.size() != main_.size()) {
    throw std::invalid_argument("side-chain list must match main-chain length");
  }
  for (char c : main_) {
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("main chain must be one-letter residue codes");
    }
  }
  if (!main_.empty() && (side_.front() != '\0' || side_.back() != '\0')) {
    throw std::invalid_argument("terminal beads cannot carry side chains");
  }
  index_beads();
}

Peptide Peptide::parse(std::string_view text) {
  std::string main;
  std::vector<char> side;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '[') {
      if (main.empty() || k + 2 >= text.size() || text[k + 2] != ']' || side.back() != '\0') {
        throw std::invalid_argument("malformed side-chain annotation in sequence");
      }
      side.back() = static_cast<char>(std::toupper(static_cast<unsigned char>(text[k + 1])));
      k += 2;
      continue;
    }
    main.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    side.push_back('\0');
  }
  if (main.empty()) throw std::invalid_argument("empty sequence");
  return Peptide(std::move(main), std::move(side));
}

bool Peptide::has_side_chain(int position) const {
  return position >= 1 && position <= length() && side_[position - 1] != '\0';
}

bool Peptide::has_any_side_chain() const { return side_chain_count() > 0; }

int Peptide::side_chain_count() const {
  return static_cast<int>(std::count_if(side_.begin(), side_.end(), [](char c) { return c != '\0'; }));
}

bool Peptide::contains(BeadId bead) const {
  if (bead.main < 1 || bead.main > length()) return false;
  return !bead.side || has_side_chain(bead.main);
}

char Peptide::species(BeadId bead) const {
  if (!contains(bead)) throw std::out_of_range("bead " + latfold::to_string(bead) + " not in peptide");
  return bead.side ? side_[bead.main - 1] : main_[bead.main - 1];
}

void Peptide::index_beads() {
  beads_.clear();
  main_offset_.assign(main_.size() + 1, 0);
  for (int i = 1; i <= length(); ++i) {
    main_offset_[i] = static_cast<int>(beads_.size());
    beads_.push_back({i, false});
    if (has_side_chain(i)) beads_.push_back({i, true});
  }
}

int Peptide::bead_index(BeadId bead) const {
  if (!contains(bead)) throw std::out_of_range("bead " + latfold::to_string(bead) + " not in peptide");
  return main_offset_[bead.main] + (bead.side ? 1 : 0);
}

std::vector<BeadId> Peptide::neighbors(BeadId bead) const {
  std::vector<BeadId> out;
  if (bead.side) {
    out.push_back({bead.main, false});
    return out;
  }
  if (bead.main > 1) out.push_back({bead.main - 1, false});
  if (has_side_chain(bead.main)) out.push_back({bead.main, true});
  if (bead.main < length()) out.push_back({bead.main + 1, false});
  std::sort(out.begin(), out.end());
  return out;
}

int Peptide::bond_separation(BeadId a, BeadId b) const {
  if (a.main == b.main) return a.side == b.side ? 0 : 1;
  return std::abs(a.main - b.main) + (a.side ? 1 : 0) + (b.side ? 1 : 0);
}

std::string Peptide::to_string() const {
  std::string out;
  for (int i = 0; i < length(); ++i) {
    out.push_back(main_[i]);
    if (side_[i] != '\0') {
      out.push_back('[');
      out.push_back(side_[i]);
      out.push_back(']');
    }
  }
  return out;
}

}  // namespace latfold
