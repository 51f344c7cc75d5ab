#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "latfold/de_optimizer.hpp"
#include "latfold/hamiltonian.hpp"

namespace latfold {

/// Every knob of a run. Relative paths resolve against the config file's
/// directory.
struct RunConfig {
  std::string sequence;
  Encoding encoding = Encoding::kDense;
  int max_l = 1;
  std::optional<bool> q6_saving;  // unset: on when the layout allows it
  std::optional<std::filesystem::path> mj_matrix;
  std::optional<std::filesystem::path> l2_matrix;
  std::optional<std::filesystem::path> contact_map;
  PenaltyConfig penalties;
  double alpha = 0.05;
  std::uint32_t shots = 1024;
  double F = 0.7;
  double CR = 0.9;
  int population = 0;
  int generations = 100;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  Entangler entangler = Entangler::kRing;
  int layers = 2;
  std::uint64_t enumeration_cap = std::uint64_t{1} << 26;
  int threads = 1;
  bool oracle = false;

  bool resolved_q6_saving() const;
};

/// Rejects unknown keys and wrongly typed values.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

struct Instance {
  Peptide peptide;
  RegisterLayout layout;
  InteractionModel model;
};

Instance make_instance(const RunConfig& cfg);
FoldOptions fold_options(const RunConfig& cfg);

}  // namespace latfold
