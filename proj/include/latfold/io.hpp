#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "latfold/de_optimizer.hpp"
#include "latfold/lattice.hpp"
#include "latfold/oracle.hpp"
#include "latfold/pauli.hpp"

namespace latfold {

using json = nlohmann::json;

json to_json(const PauliHamiltonian& h);
PauliHamiltonian pauli_from_json(const json& j);
/// One line per string: coefficient then the Z support.
std::string pauli_text(const PauliHamiltonian& h);

json to_json(const SpectrumEntry& e);
SpectrumEntry spectrum_entry_from_json(const json& j);
json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum, const RegisterLayout& layout);
std::vector<SpectrumEntry> spectrum_from_json(const json& j);

/// Bond length 1.0, six decimals, species label per bead.
std::string xyz_text(const Conformation& c, const std::string& comment);

std::string trajectory_csv(const std::vector<GenerationLog>& rows);
std::vector<GenerationLog> parse_trajectory_csv(const std::string& text);

json histogram_to_json(const std::map<std::string, HistogramBin>& hist);
std::map<std::string, HistogramBin> histogram_from_json(const json& j);

json to_json(const FoldResult& r);
FoldResult fold_result_from_json(const json& j);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

std::string bits_string(const Bits& bits);
Bits parse_bits(const std::string& text);

}  // namespace latfold
