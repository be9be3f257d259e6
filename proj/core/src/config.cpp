#include "hyden/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>

#include <json.hpp>

#include "hyden/image_io.hpp"

namespace hyden {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["model"] = to_string(c.model);
  j["lambda"] = c.lambda;
  j["mu"] = c.mu;
  j["rho_tikhonov"] = c.rho_tikhonov;
  j["rho_tv"] = c.rho_tv;
  j["sigma"] = c.sigma;
  j["seed"] = c.seed;
  j["n"] = c.n;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["k_shots"] = c.k_shots;
  j["max_iter"] = c.max_iter;
  j["tol"] = c.tol;
  j["eps_primal"] = c.eps_primal;
  j["eps_dual"] = c.eps_dual;
  j["eps_mae"] = c.eps_mae;
  j["tv_inner_iters"] = c.tv_inner_iters;
  j["knots_r"] = c.knots_r;
  j["knots_s"] = c.knots_s;
  j["normalize_intensity"] = c.normalize_intensity;
  j["input"] = c.input;
  j["reference"] = c.reference;
  j["out"] = c.out;
  j["threads"] = c.threads;
  return j;
}

template <typename T>
void read_key(const json& j, const char* key, T& dst) {
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + std::string(key) + "': value " + j.at(key).dump() +
                      " has the wrong type");
  }
}

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  c.experiment = parse_experiment_kind(j.at("experiment").get<std::string>());
  std::string model;
  read_key(j, "model", model);
  c.model = parse_model_choice(model);
  read_key(j, "lambda", c.lambda);
  read_key(j, "mu", c.mu);
  read_key(j, "rho_tikhonov", c.rho_tikhonov);
  read_key(j, "rho_tv", c.rho_tv);
  read_key(j, "sigma", c.sigma);
  if (!j.at("seed").is_number_unsigned()) {
    throw ConfigError("key 'seed': expected a non-negative integer, got " + j.at("seed").dump());
  }
  read_key(j, "seed", c.seed);
  for (auto [key, dst] : {std::pair{"n", &c.n}, {"rows", &c.rows}, {"cols", &c.cols},
                          {"k_shots", &c.k_shots}, {"max_iter", &c.max_iter},
                          {"tv_inner_iters", &c.tv_inner_iters}, {"threads", &c.threads}}) {
    if (!j.at(key).is_number_integer()) {
      throw ConfigError("key '" + std::string(key) + "': expected an integer, got " +
                        j.at(key).dump());
    }
    read_key(j, key, *dst);
  }
  read_key(j, "tol", c.tol);
  read_key(j, "eps_primal", c.eps_primal);
  read_key(j, "eps_dual", c.eps_dual);
  read_key(j, "eps_mae", c.eps_mae);
  read_key(j, "knots_r", c.knots_r);
  read_key(j, "knots_s", c.knots_s);
  read_key(j, "normalize_intensity", c.normalize_intensity);
  read_key(j, "input", c.input);
  read_key(j, "reference", c.reference);
  read_key(j, "out", c.out);
  return c;
}

void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("key '" + key + "': " + what);
}

void validate(const ExperimentConfig& c) {
  check(c.lambda > 0.0, "lambda", "must be positive");
  check(c.mu > 0.0, "mu", "must be positive");
  check(c.rho_tikhonov > 0.0, "rho_tikhonov", "must be positive");
  check(c.rho_tv > 0.0, "rho_tv", "must be positive");
  check(c.sigma >= 0.0, "sigma", "must be non-negative");
  check(c.n >= 2, "n", "must be at least 2");
  check(c.rows >= 1 && c.cols >= 1, "rows", "rows and cols must be positive");
  check(c.k_shots >= 2, "k_shots", "must be at least 2");
  check(c.max_iter >= 1, "max_iter", "must be positive");
  check(c.tol > 0.0, "tol", "must be positive");
  check(c.eps_primal > 0.0, "eps_primal", "must be positive");
  check(c.eps_dual > 0.0, "eps_dual", "must be positive");
  check(c.eps_mae > 0.0, "eps_mae", "must be positive");
  check(c.tv_inner_iters >= 1, "tv_inner_iters", "must be positive");
  check(c.threads >= 0, "threads", "must be non-negative");
  check(!c.out.empty(), "out", "missing required output directory");
  if (c.experiment != ExperimentKind::gaussian_image) {
    check(c.knots_r.size() >= 4, "knots_r", "need at least 4 knots");
    check(static_cast<int>(c.knots_r.size()) <= c.n, "knots_r", "more knots than samples");
  }
  if (c.experiment == ExperimentKind::synthetic_h2) {
    check(c.knots_s.size() == c.knots_r.size(), "knots_s", "must have as many knots as knots_r");
  }
  if (c.experiment == ExperimentKind::gaussian_image && c.input.empty()) {
    check(static_cast<long>(c.rows) * c.cols >= 2, "rows", "image needs at least 2 pixels");
  }
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::string locate_key(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return "";
  return " (line " + std::to_string(line_of_offset(text, pos)) + ")";
}

// Splits "rho" into its two targets.
std::vector<std::string> targets(const std::string& key) {
  if (key == "rho") return {"rho_tikhonov", "rho_tv"};
  return {key};
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::synthetic_h1: return "synthetic-h1";
    case ExperimentKind::synthetic_h2: return "synthetic-h2";
    case ExperimentKind::gaussian_image: return "gaussian-image";
  }
  return "unknown";
}

const char* to_string(ModelChoice m) {
  switch (m) {
    case ModelChoice::tikhonov: return "tikhonov";
    case ModelChoice::tv: return "tv";
    case ModelChoice::both: return "both";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "synthetic-h1") return ExperimentKind::synthetic_h1;
  if (s == "synthetic-h2") return ExperimentKind::synthetic_h2;
  if (s == "gaussian-image") return ExperimentKind::gaussian_image;
  throw ConfigError("key 'experiment': unknown experiment '" + s + "'");
}

ModelChoice parse_model_choice(const std::string& s) {
  if (s == "tikhonov") return ModelChoice::tikhonov;
  if (s == "tv") return ModelChoice::tv;
  if (s == "both") return ModelChoice::both;
  throw ConfigError("key 'model': expected tikhonov, tv or both, got '" + s + "'");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::synthetic_h1:
      c.n = 400;
      c.sigma = 0.6;
      c.lambda = 6.0;
      c.rho_tikhonov = 0.1;
      c.mu = 0.75;
      c.rho_tv = 1.0;
      c.tol = 1e-4;
      c.knots_r = {0.0, 1.2, 1.6, 0.4, -1.1, -1.4, -0.2, 0.9};
      break;
    case ExperimentKind::synthetic_h2:
      c.n = 400;
      c.sigma = 0.3;
      c.lambda = 5.0;
      c.rho_tikhonov = 0.1;
      c.mu = 0.1;
      c.rho_tv = 1.0;
      c.tol = 1e-5;
      c.knots_r = {1.0, 1.3, 1.5, 1.2, 0.8, 0.9, 1.4};
      c.knots_s = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
      break;
    case ExperimentKind::gaussian_image:
      c.rows = 64;
      c.cols = 64;
      c.k_shots = 20;
      c.sigma = 0.15;
      c.lambda = 4.0;
      c.rho_tikhonov = 10.0;
      c.mu = 0.6;
      c.rho_tv = 1.0;
      c.tol = 1e-4;
      c.max_iter = 3000;
      break;
  }
  return c;
}

ResolvedConfig resolve_config(ExperimentKind kind, const std::optional<fs::path>& file,
                              const std::vector<ConfigOverride>& flags) {
  json merged = to_json(default_config(kind));
  std::map<std::string, std::string> source;
  for (const auto& item : merged.items()) source[item.key()] = "default";
  json file_values = json::object();

  if (file) {
    std::ifstream in(*file, std::ios::binary);
    if (!in) throw IoError(file->string() + ": cannot open config file");
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    json parsed;
    try {
      parsed = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(file->string() + ": line " + std::to_string(line_of_offset(text, e.byte)) +
                        ": " + e.what());
    }
    if (!parsed.is_object()) throw ConfigError(file->string() + ": top level must be an object");
    for (const auto& item : parsed.items()) {
      const std::string& key = item.key();
      if (key == "experiment") {
        if (!item.value().is_string() || item.value().get<std::string>() != to_string(kind)) {
          throw ConfigError(file->string() + locate_key(text, key) + ": key 'experiment' is " +
                            item.value().dump() + " but the subcommand is " + to_string(kind));
        }
        continue;
      }
      for (const auto& t : targets(key)) {
        if (!merged.contains(t)) {
          throw ConfigError(file->string() + locate_key(text, key) + ": unknown key '" + key + "'");
        }
        const auto& old = merged[t];
        const bool num_ok = old.is_number() && item.value().is_number();
        if (old.type() != item.value().type() && !num_ok) {
          throw ConfigError(file->string() + locate_key(text, key) + ": key '" + key +
                            "' expects " + old.type_name() + ", got " + item.value().dump());
        }
        merged[t] = item.value();
        file_values[t] = item.value();
        source[t] = "file";
      }
    }
  }

  json overridden = json::array();
  for (const auto& [key, literal] : flags) {
    json value;
    try {
      value = json::parse(literal);
    } catch (const json::parse_error&) {
      throw ConfigError("flag for key '" + key + "': cannot parse value '" + literal + "'");
    }
    for (const auto& t : targets(key)) {
      if (!merged.contains(t) || t == "experiment") {
        throw ConfigError("unknown key '" + key + "'");
      }
      if (file_values.contains(t) && file_values[t] != value) {
        overridden.push_back({{"key", t}, {"file", file_values[t]}, {"flag", value}});
      }
      merged[t] = value;
      source[t] = "flag";
    }
  }

  ExperimentConfig cfg = from_json(merged);
  validate(cfg);

  json echo;
  echo["config"] = merged;
  json src = json::object();
  for (const auto& item : merged.items()) src[item.key()] = source[item.key()];
  echo["source"] = src;
  echo["overridden_by_flag"] = overridden;
  if (file) echo["config_file"] = file->string();
  return {std::move(cfg), echo.dump(2) + "\n"};
}

void write_config_echo(const ResolvedConfig& rc, const fs::path& out_dir) {
  const fs::path p = out_dir / "config.json";
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError(p.string() + ": cannot open for writing");
  out << rc.echo;
  if (!out) throw IoError(p.string() + ": write failed");
}

}  // namespace hyden
