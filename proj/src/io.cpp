#include "latfold/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace latfold {

namespace {

json bead_json(BeadId b) { return to_string(b); }

BeadId bead_from(const json& j) { return parse_bead(j.get<std::string>()); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  return out;
}

}  // namespace

json to_json(const PauliHamiltonian& h) {
  json terms = json::array();
  for (const auto& [g, c] : h.sorted_strings()) terms.push_back({{"gamma", g.members()}, {"coeff", c}});
  return {{"n_qubits", h.n_qubits()}, {"terms", std::move(terms)}};
}

PauliHamiltonian pauli_from_json(const json& j) {
  PauliHamiltonian h(j.at("n_qubits").get<int>());
  for (const auto& t : j.at("terms")) {
    VarSet g;
    for (int v : t.at("gamma").get<std::vector<int>>()) g.insert(v);
    h.add(g, t.at("coeff").get<double>());
  }
  return h;
}

std::string pauli_text(const PauliHamiltonian& h) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const auto& [g, c] : h.sorted_strings()) {
    out << c;
    if (g.empty()) out << " I";
    for (int v : g.members()) out << " Z" << v;
    out << '\n';
  }
  return out.str();
}

json to_json(const SpectrumEntry& e) {
  json contacts = json::array();
  for (const auto& k : e.contacts) contacts.push_back({bead_json(k.a), bead_json(k.b), k.order});
  json side = json::array();
  for (int t : e.turns.side) side.push_back(t);
  return {{"energy", e.energy},
          {"degeneracy", e.degeneracy},
          {"contact_bits", bits_string(e.contact_bits)},
          {"contacts", std::move(contacts)},
          {"self_avoiding", e.self_avoiding},
          {"turns", e.turns.main},
          {"side_turns", std::move(side)}};
}

SpectrumEntry spectrum_entry_from_json(const json& j) {
  SpectrumEntry e;
  e.energy = j.at("energy").get<double>();
  e.degeneracy = j.at("degeneracy").get<std::uint64_t>();
  e.contact_bits = parse_bits(j.at("contact_bits").get<std::string>());
  for (const auto& c : j.at("contacts")) e.contacts.push_back({bead_from(c.at(0)), bead_from(c.at(1)), c.at(2).get<int>()});
  e.self_avoiding = j.at("self_avoiding").get<bool>();
  e.turns.main = j.at("turns").get<std::vector<int>>();
  e.turns.side = j.at("side_turns").get<std::vector<int>>();
  return e;
}

json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum, const RegisterLayout& layout) {
  json labels = json::array();
  for (const auto& c : layout.contacts()) labels.push_back(c.label());
  json entries = json::array();
  for (const auto& e : spectrum) entries.push_back(to_json(e));
  return {{"sequence", layout.peptide().to_string()},
          {"encoding", to_string(layout.scheme().kind)},
          {"max_l", layout.max_l()},
          {"contact_qubits", std::move(labels)},
          {"entries", std::move(entries)}};
}

std::vector<SpectrumEntry> spectrum_from_json(const json& j) {
  std::vector<SpectrumEntry> out;
  for (const auto& e : j.at("entries")) out.push_back(spectrum_entry_from_json(e));
  return out;
}

std::string xyz_text(const Conformation& c, const std::string& comment) {
  std::ostringstream out;
  out << c.beads().size() << '\n' << comment << '\n';
  const double s = 1.0 / std::sqrt(3.0);
  char line[128];
  for (std::size_t k = 0; k < c.beads().size(); ++k) {
    const auto& p = c.coords()[k];
    std::snprintf(line, sizeof line, "%c %.6f %.6f %.6f\n", c.species(c.beads()[k]), p.x * s, p.y * s, p.z * s);
    out << line;
  }
  return out.str();
}

std::string trajectory_csv(const std::vector<GenerationLog>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "generation,mean_cvar,best_cvar,mean_P0,max_P0\n";
  for (const auto& r : rows) {
    out << r.generation << ',' << r.mean_cvar << ',' << r.best_cvar << ',' << r.mean_p0 << ',' << r.max_p0 << '\n';
  }
  return out.str();
}

std::vector<GenerationLog> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("generation,", 0) != 0) throw std::runtime_error("trajectory CSV lacks its header");
  std::vector<GenerationLog> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 5) throw std::runtime_error("malformed trajectory row: " + line);
    rows.push_back({std::stoi(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])});
  }
  return rows;
}

json histogram_to_json(const std::map<std::string, HistogramBin>& hist) {
  json j = json::object();
  for (const auto& [key, bin] : hist) {
    j[key] = {{"count", bin.count},
              {"probability", bin.probability},
              {"min_energy", bin.min_energy},
              {"individuals", bin.individuals}};
  }
  return j;
}

std::map<std::string, HistogramBin> histogram_from_json(const json& j) {
  std::map<std::string, HistogramBin> hist;
  for (const auto& [key, v] : j.items()) {
    hist[key] = {v.at("count").get<std::uint64_t>(), v.at("probability").get<double>(), v.at("min_energy").get<double>(),
                 v.at("individuals").get<std::uint64_t>()};
  }
  return hist;
}

json to_json(const FoldResult& r) {
  json traj = json::array();
  for (const auto& g : r.trajectory) {
    traj.push_back({{"generation", g.generation},
                    {"mean_cvar", g.mean_cvar},
                    {"best_cvar", g.best_cvar},
                    {"mean_P0", g.mean_p0},
                    {"max_P0", g.max_p0}});
  }
  return {{"best_theta", r.best_theta},
          {"best_cvar", r.best_cvar},
          {"best_bitstring", r.best_bitstring},
          {"best_energy", r.best_energy},
          {"population", r.population},
          {"final_P0", r.final_p0},
          {"trajectory", std::move(traj)},
          {"histogram", histogram_to_json(r.histogram)}};
}

FoldResult fold_result_from_json(const json& j) {
  FoldResult r;
  r.best_theta = j.at("best_theta").get<std::vector<double>>();
  r.best_cvar = j.at("best_cvar").get<double>();
  r.best_bitstring = j.at("best_bitstring").get<std::uint64_t>();
  r.best_energy = j.at("best_energy").get<double>();
  r.population = j.at("population").get<int>();
  r.final_p0 = j.at("final_P0").get<std::vector<double>>();
  for (const auto& g : j.at("trajectory")) {
    r.trajectory.push_back({g.at("generation").get<int>(), g.at("mean_cvar").get<double>(),
                            g.at("best_cvar").get<double>(), g.at("mean_P0").get<double>(),
                            g.at("max_P0").get<double>()});
  }
  r.histogram = histogram_from_json(j.at("histogram"));
  return r;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error("corrupt JSON in " + path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string bits_string(const Bits& bits) {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

Bits parse_bits(const std::string& text) {
  Bits b;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0 and 1");
    b.push_back(c == '1');
  }
  return b;
}

}  // namespace latfold
