// Experiment configuration: defaults per experiment, JSON config files and
// command line overrides.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyden {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { synthetic_h1, synthetic_h2, gaussian_image };
enum class ModelChoice { tikhonov, tv, both };

const char* to_string(ExperimentKind k);
const char* to_string(ModelChoice m);
ExperimentKind parse_experiment_kind(const std::string& s);
ModelChoice parse_model_choice(const std::string& s);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::synthetic_h1;
  ModelChoice model = ModelChoice::both;
  double lambda = 1.0;
  double mu = 1.0;
  double rho_tikhonov = 1.0;
  double rho_tv = 1.0;
  /// Noise level; 0 gives the noiseless variant.
  double sigma = 0.1;
  std::uint64_t seed = 42;
  int n = 400;
  int rows = 64;
  int cols = 64;
  int k_shots = 20;
  int max_iter = 20000;
  /// Bound on mae_eta that every emitted sheet-valued result must meet.
  double tol = 1e-4;
  double eps_primal = 1e-10;
  double eps_dual = 1e-10;
  double eps_mae = 1e-10;
  /// Douglas-Rachford iterations per 2D TV prox (image experiment).
  int tv_inner_iters = 50;
  /// Ground-truth knots, spread uniformly over the signal. knots_s is the
  /// angular coordinate of the H_2 signal and unused for H_1.
  std::vector<double> knots_r;
  std::vector<double> knots_s;
  /// Divide input gray values by the file's maxval.
  bool normalize_intensity = true;
  /// Image or directory of images; empty selects the built-in test image.
  std::string input;
  /// Optional clean mean image for real-series SNR.
  std::string reference;
  std::string out;
  /// 0 keeps the OpenMP default.
  int threads = 0;

  bool runs_tikhonov() const { return model != ModelChoice::tv; }
  bool runs_tv() const { return model != ModelChoice::tikhonov; }
};

ExperimentConfig default_config(ExperimentKind kind);

/// A flag value given as a JSON literal, e.g. {"lambda", "4"} or
/// {"model", "\"tv\""}. The key "rho" sets both rho_tikhonov and rho_tv.
using ConfigOverride = std::pair<std::string, std::string>;

struct ResolvedConfig {
  ExperimentConfig config;
  /// Fully resolved config with per-key provenance, as written by
  /// write_config_echo.
  std::string echo;
};

/// Defaults for `kind`, then the optional JSON file, then `flags`. Unknown
/// keys, type mismatches, invalid values and a missing output directory
/// raise ConfigError naming the key (and the file line where applicable).
ResolvedConfig resolve_config(ExperimentKind kind, const std::optional<std::filesystem::path>& file,
                              const std::vector<ConfigOverride>& flags);

/// Writes `<out_dir>/config.json`.
void write_config_echo(const ResolvedConfig& rc, const std::filesystem::path& out_dir);

}  // namespace hyden
