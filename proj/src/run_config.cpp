#include "latfold/run_config.hpp"

#include <set>
#include <stdexcept>

#include "latfold/io.hpp"

namespace latfold {

namespace {

const std::set<std::string> kKeys = {
    "sequence", "encoding", "max_l",  "q6_saving",  "mj_matrix", "l2_matrix",  "contact_map",
    "penalties", "alpha",   "shots",  "F",          "CR",        "population", "generations",
    "seed",     "output_dir", "entangler", "layers", "enumeration_cap", "threads", "oracle"};

const std::set<std::string> kPenaltyKeys = {"lambda_back", "lambda_chirality", "lambda_onehot", "lambda_1",
                                            "lambda_2",    "lambda_3",         "lambda_5",      "audit"};

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config key '" + key + "' has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

void set_penalty(std::optional<double>& slot, const json& pen, const std::string& key) {
  if (pen.contains(key)) slot = get<double>(pen, key);
}

}  // namespace

bool RunConfig::resolved_q6_saving() const {
  if (q6_saving) return *q6_saving;
  return encoding == Encoding::kDense && !Peptide::parse(sequence).has_side_chain(2);
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, kKeys, "run config");
  RunConfig cfg;
  if (!j.contains("sequence")) throw std::invalid_argument("run config needs a 'sequence'");
  cfg.sequence = get<std::string>(j, "sequence");
  if (j.contains("encoding")) cfg.encoding = parse_encoding(get<std::string>(j, "encoding"));
  if (j.contains("max_l")) cfg.max_l = get<int>(j, "max_l");
  if (j.contains("q6_saving")) cfg.q6_saving = get<bool>(j, "q6_saving");
  if (j.contains("mj_matrix")) {
    const auto v = get<std::string>(j, "mj_matrix");
    cfg.mj_matrix = v == "default" ? default_mj_path() : resolve(base_dir, v);
  }
  if (j.contains("l2_matrix")) cfg.l2_matrix = resolve(base_dir, get<std::string>(j, "l2_matrix"));
  if (j.contains("contact_map")) cfg.contact_map = resolve(base_dir, get<std::string>(j, "contact_map"));
  if (j.contains("penalties")) {
    const auto& pen = j.at("penalties");
    reject_unknown(pen, kPenaltyKeys, "penalties");
    set_penalty(cfg.penalties.lambda_back, pen, "lambda_back");
    set_penalty(cfg.penalties.lambda_chirality, pen, "lambda_chirality");
    set_penalty(cfg.penalties.lambda_onehot, pen, "lambda_onehot");
    set_penalty(cfg.penalties.lambda_1, pen, "lambda_1");
    set_penalty(cfg.penalties.lambda_2, pen, "lambda_2");
    set_penalty(cfg.penalties.lambda_3, pen, "lambda_3");
    set_penalty(cfg.penalties.lambda_5, pen, "lambda_5");
    if (pen.contains("audit")) cfg.penalties.audit = get<bool>(pen, "audit");
  }
  if (j.contains("alpha")) cfg.alpha = get<double>(j, "alpha");
  if (j.contains("shots")) cfg.shots = get<std::uint32_t>(j, "shots");
  if (j.contains("F")) cfg.F = get<double>(j, "F");
  if (j.contains("CR")) cfg.CR = get<double>(j, "CR");
  if (j.contains("population")) cfg.population = get<int>(j, "population");
  if (j.contains("generations")) cfg.generations = get<int>(j, "generations");
  if (j.contains("seed")) cfg.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, get<std::string>(j, "output_dir"));
  if (j.contains("entangler")) cfg.entangler = parse_entangler(get<std::string>(j, "entangler"));
  if (j.contains("layers")) cfg.layers = get<int>(j, "layers");
  if (j.contains("enumeration_cap")) cfg.enumeration_cap = get<std::uint64_t>(j, "enumeration_cap");
  if (j.contains("threads")) cfg.threads = get<int>(j, "threads");
  if (j.contains("oracle")) cfg.oracle = get<bool>(j, "oracle");

  if (cfg.max_l < 1 || cfg.max_l > 2) throw std::invalid_argument("max_l must be 1 or 2");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (cfg.shots == 0) throw std::invalid_argument("shots must be positive");
  if (cfg.layers < 1) throw std::invalid_argument("layers must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be positive");
  if (cfg.population != 0 && cfg.population < 4) throw std::invalid_argument("population must be at least 4");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_run_config(read_json(path), base);
}

json to_json(const RunConfig& cfg) {
  json pen = json::object();
  auto put = [&pen](const char* key, const std::optional<double>& v) {
    if (v) pen[key] = *v;
  };
  put("lambda_back", cfg.penalties.lambda_back);
  put("lambda_chirality", cfg.penalties.lambda_chirality);
  put("lambda_onehot", cfg.penalties.lambda_onehot);
  put("lambda_1", cfg.penalties.lambda_1);
  put("lambda_2", cfg.penalties.lambda_2);
  put("lambda_3", cfg.penalties.lambda_3);
  put("lambda_5", cfg.penalties.lambda_5);
  pen["audit"] = cfg.penalties.audit;

  json j = {{"sequence", cfg.sequence},
            {"encoding", to_string(cfg.encoding)},
            {"max_l", cfg.max_l},
            {"q6_saving", cfg.resolved_q6_saving()},
            {"penalties", pen},
            {"alpha", cfg.alpha},
            {"shots", cfg.shots},
            {"F", cfg.F},
            {"CR", cfg.CR},
            {"population", cfg.population},
            {"generations", cfg.generations},
            {"seed", cfg.seed},
            {"output_dir", cfg.output_dir.string()},
            {"entangler", to_string(cfg.entangler)},
            {"layers", cfg.layers},
            {"enumeration_cap", cfg.enumeration_cap},
            {"threads", cfg.threads},
            {"oracle", cfg.oracle}};
  if (cfg.mj_matrix) j["mj_matrix"] = cfg.mj_matrix->string();
  if (cfg.l2_matrix) j["l2_matrix"] = cfg.l2_matrix->string();
  if (cfg.contact_map) j["contact_map"] = cfg.contact_map->string();
  return j;
}

Instance make_instance(const RunConfig& cfg) {
  Peptide peptide = Peptide::parse(cfg.sequence);
  InteractionModel model(cfg.max_l);
  if (cfg.mj_matrix) {
    model.set_matrix(1, SpeciesMatrix::load(*cfg.mj_matrix));
  } else if (!cfg.contact_map) {
    model.set_matrix(1, SpeciesMatrix::load(default_mj_path()));
  }
  if (cfg.l2_matrix) model.set_matrix(2, SpeciesMatrix::load(*cfg.l2_matrix));
  if (cfg.contact_map) {
    const auto rows = load_contact_map(*cfg.contact_map);
    for (const auto& r : rows) {
      if (!peptide.contains(r.a) || !peptide.contains(r.b)) {
        throw std::invalid_argument("contact map names a bead outside the peptide");
      }
    }
    model.add_overrides(rows);
  }
  RegisterLayout layout =
      build_layout(peptide, EncodingScheme{cfg.encoding}, cfg.max_l, cfg.resolved_q6_saving());
  return {std::move(peptide), std::move(layout), std::move(model)};
}

FoldOptions fold_options(const RunConfig& cfg) {
  FoldOptions o;
  o.ansatz.entangler = cfg.entangler;
  o.ansatz.layers = cfg.layers;
  o.cvar = {cfg.alpha, cfg.shots};
  o.de.population = cfg.population;
  o.de.F = cfg.F;
  o.de.CR = cfg.CR;
  o.de.generations = cfg.generations;
  o.de.seed = cfg.seed;
  o.de.threads = cfg.threads;
  return o;
}

}  // namespace latfold
