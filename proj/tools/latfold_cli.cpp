#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "latfold/de_optimizer.hpp"
#include "latfold/hamiltonian.hpp"
#include "latfold/io.hpp"
#include "latfold/oracle.hpp"
#include "latfold/run_config.hpp"

namespace fs = std::filesystem;
using namespace latfold;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> sequence, encoding, mj_matrix, l2_matrix, contact_map, output_dir, entangler;
  std::optional<int> max_l, population, generations, layers, threads;
  std::optional<bool> q6_saving, oracle, audit;
  std::optional<double> alpha, F, CR;
  std::optional<double> lambda_back, lambda_chirality, lambda_onehot, lambda_1, lambda_2, lambda_3, lambda_5;
  std::optional<std::uint32_t> shots;
  std::optional<std::uint64_t> seed, enumeration_cap;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "Run configuration (JSON)");
  cmd->add_option("--sequence", f.sequence, "Residue codes, side chains in brackets");
  cmd->add_option("--encoding", f.encoding, "dense or sparse");
  cmd->add_option("--max-l", f.max_l, "Highest contact order (1 or 2)");
  cmd->add_option("--q6-saving", f.q6_saving, "Fix the second bit of turn 3 (dense only)");
  cmd->add_option("--mj-matrix", f.mj_matrix, "Order-1 species matrix CSV, or 'default'");
  cmd->add_option("--l2-matrix", f.l2_matrix, "Order-2 species matrix CSV");
  cmd->add_option("--contact-map", f.contact_map, "Per-pair energies CSV (i,j,l,epsilon)");
  cmd->add_option("--lambda-back", f.lambda_back);
  cmd->add_option("--lambda-chirality", f.lambda_chirality);
  cmd->add_option("--lambda-onehot", f.lambda_onehot);
  cmd->add_option("--lambda-1", f.lambda_1);
  cmd->add_option("--lambda-2", f.lambda_2);
  cmd->add_option("--lambda-3", f.lambda_3);
  cmd->add_option("--lambda-5", f.lambda_5);
  cmd->add_option("--audit", f.audit, "Fail on penalty dominance violations");
  cmd->add_option("--alpha", f.alpha, "CVaR tail fraction");
  cmd->add_option("--shots", f.shots, "Measurements per evaluation");
  cmd->add_option("--F", f.F, "Differential weight");
  cmd->add_option("--CR", f.CR, "Crossover rate");
  cmd->add_option("--population", f.population, "Population size (0 = 5 m n)");
  cmd->add_option("--generations", f.generations);
  cmd->add_option("--seed", f.seed);
  cmd->add_option("-o,--output-dir", f.output_dir);
  cmd->add_option("--entangler", f.entangler, "ring or all_to_all");
  cmd->add_option("--layers", f.layers, "m in the population rule");
  cmd->add_option("--enumeration-cap", f.enumeration_cap);
  cmd->add_option("--threads", f.threads);
  cmd->add_option("--oracle", f.oracle, "Attach the exact spectrum for ground-state tracking");
}

std::string absolute(const std::string& p) {
  return p == "default" ? p : fs::absolute(p).string();
}

RunConfig resolve_config(const Flags& f) {
  json j = json::object();
  fs::path base = fs::current_path();
  if (!f.config.empty()) {
    j = read_json(f.config);
    base = fs::absolute(f.config).parent_path();
  }
  auto set = [&j](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  set("sequence", f.sequence);
  set("encoding", f.encoding);
  set("max_l", f.max_l);
  set("q6_saving", f.q6_saving);
  if (f.mj_matrix) j["mj_matrix"] = absolute(*f.mj_matrix);
  if (f.l2_matrix) j["l2_matrix"] = absolute(*f.l2_matrix);
  if (f.contact_map) j["contact_map"] = absolute(*f.contact_map);
  if (f.output_dir) j["output_dir"] = absolute(*f.output_dir);
  set("alpha", f.alpha);
  set("shots", f.shots);
  set("F", f.F);
  set("CR", f.CR);
  set("population", f.population);
  set("generations", f.generations);
  set("seed", f.seed);
  set("entangler", f.entangler);
  set("layers", f.layers);
  set("enumeration_cap", f.enumeration_cap);
  set("threads", f.threads);
  set("oracle", f.oracle);
  auto pen = [&j](const char* key, const auto& v) {
    if (v) j["penalties"][key] = *v;
  };
  pen("lambda_back", f.lambda_back);
  pen("lambda_chirality", f.lambda_chirality);
  pen("lambda_onehot", f.lambda_onehot);
  pen("lambda_1", f.lambda_1);
  pen("lambda_2", f.lambda_2);
  pen("lambda_3", f.lambda_3);
  pen("lambda_5", f.lambda_5);
  pen("audit", f.audit);
  return parse_run_config(j, base);
}

Hamiltonian build_hamiltonian(const RunConfig& cfg) {
  const Instance inst = make_instance(cfg);
  return assemble(inst.layout, inst.model, cfg.penalties);
}

int cmd_build(const RunConfig& cfg) {
  const Hamiltonian h = build_hamiltonian(cfg);
  const PauliHamiltonian pauli = h.pauli();
  const ResourceReport rep = resource_report(pauli);
  write_json(cfg.output_dir / "hamiltonian.json", to_json(pauli));
  write_text(cfg.output_dir / "hamiltonian.txt", pauli_text(pauli));
  json layout = {{"n_conf", h.layout.n_conf()}, {"n_int", h.layout.n_int()}, {"n", h.layout.n_qubits()},
                 {"qubits", h.layout.qubit_labels()}};
  write_json(cfg.output_dir / "layout.json", layout);
  std::cout << "n_conf " << h.layout.n_conf() << '\n'
            << "n_int " << h.layout.n_int() << '\n'
            << "n " << h.layout.n_qubits() << '\n'
            << "term_count " << rep.term_count << '\n'
            << "max_locality " << rep.max_locality << '\n';
  std::cout << "contact_qubits";
  for (const auto& c : h.layout.contacts()) std::cout << ' ' << c.label();
  std::cout << '\n';
  return 0;
}

int cmd_enumerate(const RunConfig& cfg) {
  const Instance inst = make_instance(cfg);
  OracleOptions opts;
  opts.cap = cfg.enumeration_cap;
  opts.threads = cfg.threads;
  const auto spectrum = enumerate(inst.layout, inst.model, opts);
  write_json(cfg.output_dir / "spectrum.json", spectrum_to_json(spectrum, inst.layout));
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const auto& e = spectrum[k];
    char name[64];
    std::snprintf(name, sizeof name, "entry_%04zu.xyz", k);
    std::ostringstream comment;
    comment << "energy=" << e.energy << " degeneracy=" << e.degeneracy << " self_avoiding=" << e.self_avoiding;
    write_text(cfg.output_dir / "conformations" / name, xyz_text(grow(e.turns, inst.peptide), comment.str()));
  }
  const auto levels = fold_levels(spectrum);
  std::cout << "entries " << spectrum.size() << '\n';
  std::cout << "levels " << levels.size() << '\n';
  if (auto g = ground_entry(spectrum)) {
    std::cout << "ground_energy " << g->energy << '\n'
              << "ground_degeneracy " << g->degeneracy << '\n'
              << "ground_contacts " << bits_string(g->contact_bits) << '\n';
  }
  return 0;
}

int cmd_fold(const RunConfig& cfg) {
  const Hamiltonian h = build_hamiltonian(cfg);
  FoldOptions opts = fold_options(cfg);
  if (cfg.oracle) {
    OracleOptions oo;
    oo.cap = cfg.enumeration_cap;
    oo.threads = cfg.threads;
    const auto spectrum = enumerate(h.layout, h.model, oo);
    if (auto g = ground_entry(spectrum)) opts.ground_energy = g->energy;
  }
  const FoldResult r = fold(h, opts, [](const GenerationLog& g) {
    std::cerr << "generation " << g.generation << " best " << g.best_cvar << " mean " << g.mean_cvar << " max_P0 "
              << g.max_p0 << '\n';
  });

  Bits bits(h.layout.n_qubits());
  for (int k = 0; k < h.layout.n_qubits(); ++k) bits[k] = (r.best_bitstring >> k) & 1U;
  const DecodedTurns dec = decode(bits, h.layout);
  if (!dec.valid) throw std::runtime_error("lowest-energy sample does not decode to a valid turn sequence");

  write_text(cfg.output_dir / "trajectory.csv", trajectory_csv(r.trajectory));
  write_json(cfg.output_dir / "histogram.json", histogram_to_json(r.histogram));
  std::ostringstream comment;
  comment << "energy=" << r.best_energy << " bits=" << bits_string(bits);
  write_text(cfg.output_dir / "best_fold.xyz", xyz_text(grow(dec.turns, h.layout.peptide()), comment.str()));
  json manifest = {{"config", to_json(cfg)}, {"seed", cfg.seed}, {"version", LATFOLD_VERSION},
                   {"n_qubits", h.layout.n_qubits()}, {"population", r.population}};
  if (opts.ground_energy) manifest["ground_energy"] = *opts.ground_energy;
  write_json(cfg.output_dir / "manifest.json", manifest);
  write_json(cfg.output_dir / "result.json", to_json(r));
  std::cout << "best_cvar " << r.best_cvar << '\n' << "best_energy " << r.best_energy << '\n';
  if (!r.trajectory.empty()) std::cout << "max_P0 " << r.trajectory.back().max_p0 << '\n';
  return 0;
}

int cmd_report(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("no run directory at " + dir.string());
  const auto hist_path = dir / "histogram.json";
  const auto traj_path = dir / "trajectory.csv";
  if (!fs::exists(hist_path) || !fs::exists(traj_path)) {
    throw std::runtime_error("run directory lacks histogram.json or trajectory.csv");
  }
  const auto hist = histogram_from_json(read_json(hist_path));
  const auto traj = parse_trajectory_csv(read_text(traj_path));

  std::ostringstream h, e, p;
  h.precision(17);
  e.precision(17);
  p.precision(17);
  h << "contact_bits,count,probability,min_energy,individuals\n";
  for (const auto& [key, bin] : hist) {
    h << key << ',' << bin.count << ',' << bin.probability << ',' << bin.min_energy << ',' << bin.individuals << '\n';
  }
  e << "generation,mean_cvar,best_cvar\n";
  p << "generation,mean_P0,max_P0\n";
  for (const auto& g : traj) {
    e << g.generation << ',' << g.mean_cvar << ',' << g.best_cvar << '\n';
    p << g.generation << ',' << g.mean_p0 << ',' << g.max_p0 << '\n';
  }
  write_text(dir / "report_histogram.csv", h.str());
  write_text(dir / "report_energy.csv", e.str());
  write_text(dir / "report_p0.csv", p.str());
  std::cout << "histogram_rows " << hist.size() << '\n' << "generations " << traj.size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice protein folding Hamiltonians and CVaR-VQE search"};
  app.set_version_flag("--version", LATFOLD_VERSION);
  app.require_subcommand(1);

  Flags build_flags, enum_flags, fold_flags;
  auto* build = app.add_subcommand("build", "Assemble the Hamiltonian and export it");
  add_run_flags(build, build_flags);
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Exact spectrum by turn enumeration");
  add_run_flags(enumerate_cmd, enum_flags);
  auto* fold_cmd = app.add_subcommand("fold", "CVaR-VQE with differential evolution");
  add_run_flags(fold_cmd, fold_flags);
  std::string report_dir;
  auto* report = app.add_subcommand("report", "Plot-ready CSVs from a fold run");
  report->add_option("dir", report_dir, "Run output directory")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) return cmd_build(resolve_config(build_flags));
    if (*enumerate_cmd) return cmd_enumerate(resolve_config(enum_flags));
    if (*fold_cmd) return cmd_fold(resolve_config(fold_flags));
    if (*report) return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
