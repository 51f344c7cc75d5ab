#include "latfold/interaction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latfold {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

double parse_double(const std::string& cell, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + cell + "' in " + context);
  }
}

}  // namespace

SpeciesMatrix SpeciesMatrix::load(const std::filesystem::path& path) { return parse(read_file(path)); }

SpeciesMatrix SpeciesMatrix::parse(const std::string& csv_text) {
  const auto lines = data_lines(csv_text);
  if (lines.empty()) throw std::invalid_argument("empty species matrix");
  SpeciesMatrix m;
  const auto header = split_csv(lines.front());
  for (std::size_t k = 1; k < header.size(); ++k) {
    if (header[k].size() != 1) throw std::invalid_argument("matrix header must list one-letter codes");
    m.codes_.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(header[k][0]))));
  }
  const std::size_t n = m.codes_.size();
  std::vector<std::optional<double>> cells(n * n);
  if (lines.size() != n + 1) throw std::invalid_argument("matrix must have one row per header code");
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = split_csv(lines[r + 1]);
    if (row.empty() || row[0].size() != 1) throw std::invalid_argument("matrix row must start with a code");
    const int i = m.slot(static_cast<char>(std::toupper(static_cast<unsigned char>(row[0][0]))));
    if (i < 0) throw std::invalid_argument("matrix row code missing from header");
    for (std::size_t k = 1; k < row.size() && k <= n; ++k) {
      if (row[k].empty()) continue;
      cells[i * n + (k - 1)] = parse_double(row[k], "species matrix");
    }
  }
  m.values_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = cells[i * n + j];
      const auto& y = cells[j * n + i];
      if (x && y && *x != *y) throw std::invalid_argument("species matrix is not symmetric");
      if (!x && !y) throw std::invalid_argument("species matrix has a missing entry");
      m.values_[i * n + j] = x ? *x : *y;
    }
  }
  return m;
}

int SpeciesMatrix::slot(char code) const {
  const auto pos = codes_.find(static_cast<char>(std::toupper(static_cast<unsigned char>(code))));
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

bool SpeciesMatrix::has(char code) const { return slot(code) >= 0; }

double SpeciesMatrix::at(char a, char b) const {
  const int i = slot(a), j = slot(b);
  if (i < 0 || j < 0) throw std::out_of_range(std::string("species '") + a + "' or '" + b + "' not in matrix");
  return values_[i * codes_.size() + j];
}

std::vector<ContactOverride> load_contact_map(const std::filesystem::path& path) {
  return parse_contact_map(read_file(path));
}

std::vector<ContactOverride> parse_contact_map(const std::string& csv_text) {
  std::vector<ContactOverride> rows;
  bool first = true;
  for (const auto& line : data_lines(csv_text)) {
    const auto cells = split_csv(line);
    if (cells.size() != 4) throw std::invalid_argument("contact map rows need 4 fields: " + line);
    if (first && !cells[0].empty() && !std::isdigit(static_cast<unsigned char>(cells[0][0]))) {
      first = false;
      continue;
    }
    first = false;
    ContactOverride row;
    row.a = parse_bead(cells[0]);
    row.b = parse_bead(cells[1]);
    const double order = parse_double(cells[2], "contact map");
    if (order != 1.0 && order != 2.0) throw std::invalid_argument("contact order must be 1 or 2");
    row.order = static_cast<int>(order);
    row.epsilon = parse_double(cells[3], "contact map");
    if (row.b < row.a) std::swap(row.a, row.b);
    rows.push_back(row);
  }
  return rows;
}

void InteractionModel::set_matrix(int order, SpeciesMatrix m) {
  if (order < 1 || order > 2) throw std::invalid_argument("contact order must be 1 or 2");
  matrices_[order - 1] = std::move(m);
}

void InteractionModel::set_override(BeadId a, BeadId b, int order, double epsilon) {
  if (order < 1 || order > 2) throw std::invalid_argument("contact order must be 1 or 2");
  if (b < a) std::swap(a, b);
  overrides_[{a, b, order}] = epsilon;
}

void InteractionModel::add_overrides(const std::vector<ContactOverride>& rows) {
  for (const auto& r : rows) set_override(r.a, r.b, r.order, r.epsilon);
}

double InteractionModel::epsilon(const Peptide& peptide, BeadId a, BeadId b, int order) const {
  if (order < 1 || order > 2) return 0.0;
  if (b < a) std::swap(a, b);
  if (auto it = overrides_.find({a, b, order}); it != overrides_.end()) return it->second;
  const auto& m = matrices_[order - 1];
  if (!m) return 0.0;
  return m->at(peptide.species(a), peptide.species(b));
}

std::filesystem::path default_mj_path() {
  return std::filesystem::path(LATFOLD_DATA_DIR) / "mj_matrix.csv";
}

}  // namespace latfold
