// Experiment runners behind the command line tool.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hyden/config.hpp"
#include "hyden/geometry.hpp"

namespace hyden {

/// Ordered key = value list written as metrics.txt.
class MetricsFile {
 public:
  void add(const std::string& key, double value);
  void add(const std::string& key, long value);
  void add(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  /// Throws std::out_of_range for missing or non-numeric keys.
  double number(const std::string& key) const;
  std::string text(const std::string& key) const;

  /// One "key = value" line per entry; doubles with 17 significant digits.
  std::string serialize() const;
  void write(const std::filesystem::path& path) const;

 private:
  using Value = std::variant<double, long, std::string>;
  std::vector<std::pair<std::string, Value>> entries_;
};

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNotConverged = 2, kExitIo = 3 };

struct ExperimentResult {
  MetricsFile metrics;
  /// kExitOk, or kExitNotConverged if some model's result missed the sheet
  /// tolerance or diverged; such results are not written.
  int exit_code = kExitOk;
};

/// Piecewise-cubic Hermite (monotone) interpolation of `knots`, placed
/// uniformly over sample positions 0..n-1, evaluated at every position.
std::vector<double> interpolate_knots(const std::vector<double>& knots, int n);

/// Built-in rows x cols test image with values in [0, 1].
Matrix builtin_test_image(int rows, int cols);

ExperimentResult run_synthetic_h1(const ExperimentConfig& cfg, std::ostream& log);
ExperimentResult run_synthetic_h2(const ExperimentConfig& cfg, std::ostream& log);
ExperimentResult run_gaussian_image(const ExperimentConfig& cfg, std::ostream& log);

/// Creates the output directory, runs the configured experiment and writes
/// all artifacts including the config echo. ConfigError, IoError and other
/// failures propagate to the caller.
ExperimentResult run_experiment(const ResolvedConfig& rc, std::ostream& log);

}  // namespace hyden
