#include "hyden/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <stdexcept>

#include <math.h>  // Boost 1.74 pchip calls unqualified isnan

#include <boost/math/interpolators/pchip.hpp>

#include "hyden/gaussproc.hpp"
#include "hyden/graph.hpp"
#include "hyden/image_io.hpp"
#include "hyden/metrics.hpp"
#include "hyden/noise.hpp"
#include "hyden/solvers.hpp"

namespace hyden {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw IoError(path.string() + ": cannot open for writing");
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw IoError(path_.string() + ": write failed");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

struct ModelRun {
  std::string name;
  Matrix x;
  SolveReport report;
  double tight_v = 0.0;
  double tight_f = 0.0;
  double tight_ell = 0.0;
  bool ok = false;
};

StopOptions stop_options(const ExperimentConfig& cfg) {
  StopOptions s;
  s.max_iter = cfg.max_iter;
  s.eps_primal = cfg.eps_primal;
  s.eps_dual = cfg.eps_dual;
  s.eps_mae = cfg.eps_mae;
  return s;
}

double max_v_gap(const Matrix& x, const Vector& v) {
  double t = 0.0;
  for (Eigen::Index n = 0; n < x.cols(); ++n) {
    t = std::max(t, std::abs(v[n] - x.col(n).squaredNorm()));
  }
  return t;
}

std::vector<ModelRun> run_models(const ExperimentConfig& cfg, const Graph& g, const Matrix& y,
                                 std::ostream& log) {
  std::vector<ModelRun> runs;
  const StopOptions stop = stop_options(cfg);
  if (cfg.runs_tikhonov()) {
    TikhonovProblem p{g, y, cfg.lambda, cfg.rho_tikhonov};
    TikhonovResult r = admm_tikhonov(p, stop);
    ModelRun m{"tikhonov", r.vars.x, std::move(r.report)};
    m.tight_v = max_v_gap(r.vars.x, r.vars.v);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const auto [n, k] = g.edge(e);
      const auto xn = r.vars.x.col(static_cast<Eigen::Index>(n));
      const auto xk = r.vars.x.col(static_cast<Eigen::Index>(k));
      const auto ei = static_cast<Eigen::Index>(e);
      m.tight_f = std::max(m.tight_f, std::abs(r.vars.f[ei] - xn.dot(xk)));
      m.tight_ell = std::max(m.tight_ell, std::abs(r.vars.ell[ei] - minkowski(xn, xk)));
    }
    runs.push_back(std::move(m));
  }
  if (cfg.runs_tv()) {
    TvProblem p{g, y, cfg.mu, cfg.rho_tv, Tv2dOptions{}};
    p.tv_options.max_iters = cfg.tv_inner_iters;
    TvResult r = admm_tv(p, stop);
    ModelRun m{"tv", r.vars.x, std::move(r.report)};
    m.tight_v = max_v_gap(r.vars.x, r.vars.v);
    runs.push_back(std::move(m));
  }
  for (auto& m : runs) {
    m.ok = m.report.reason != StopReason::diverged && m.x.allFinite() &&
           m.report.mae_eta <= cfg.tol;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s %-9s iterations=%d mae_eta=%.3e wall=%.2fs%s\n",
                  m.name.c_str(), to_string(m.report.reason), m.report.iterations,
                  m.report.mae_eta, m.report.wall_seconds, m.ok ? "" : "  [FAILED]");
    log << buf;
  }
  return runs;
}

void add_run_metrics(MetricsFile& mf, const ModelRun& m) {
  const std::string k = m.name + ".";
  mf.add(k + "status", std::string(m.ok ? "ok" : "failed"));
  mf.add(k + "stop_reason", std::string(to_string(m.report.reason)));
  mf.add(k + "iterations", static_cast<long>(m.report.iterations));
  mf.add(k + "objective", m.report.objective);
  mf.add(k + "mae_eta", m.report.mae_eta);
  mf.add(k + "primal_residual", m.report.primal_residual);
  if (m.name == "tv") mf.add(k + "primal_residual_u", m.report.primal_residual_u);
  mf.add(k + "dual_residual", m.report.dual_residual);
  mf.add(k + "tightness_v", m.tight_v);
  if (m.name == "tikhonov") {
    mf.add(k + "tightness_f", m.tight_f);
    mf.add(k + "tightness_ell", m.tight_ell);
  }
}

void write_trace(const fs::path& dir, const ModelRun& m) {
  CsvWriter csv(dir / ("trace_" + m.name + ".csv"),
                {"iteration", "objective", "mae_eta", "primal_residual", "primal_residual_u",
                 "dual_residual"});
  for (const auto& r : m.report.trace) {
    csv.row({std::to_string(r.iteration), fmt17(r.objective), fmt17(r.mae_eta),
             fmt17(r.primal_residual), fmt17(r.primal_residual_u), fmt17(r.dual_residual)});
  }
}

int finish(MetricsFile& mf, const std::vector<ModelRun>& runs) {
  const bool all_ok = std::all_of(runs.begin(), runs.end(), [](const ModelRun& m) { return m.ok; });
  mf.add("status", std::string(all_ok ? "ok" : "failed"));
  return all_ok ? kExitOk : kExitNotConverged;
}

Matrix synth_points_h1(const ExperimentConfig& cfg) {
  const auto r = interpolate_knots(cfg.knots_r, cfg.n);
  Matrix truth(2, cfg.n);
  for (int i = 0; i < cfg.n; ++i) truth.col(i) = param_h1(r[static_cast<std::size_t>(i)]);
  return truth;
}

Matrix synth_points_h2(const ExperimentConfig& cfg) {
  const auto r = interpolate_knots(cfg.knots_r, cfg.n);
  const auto s = interpolate_knots(cfg.knots_s, cfg.n);
  Matrix truth(3, cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    truth.col(i) = param_h2(r[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i)]);
  }
  return truth;
}

void add_noise_metrics(MetricsFile& mf, const Matrix& y, const Matrix& truth) {
  mf.add("noisy.mae_eta", mae_eta(y));
  mf.add("noisy.mean_hyp_error", mean_hyp_error(readout_on_sheet(y), truth));
}

}  // namespace

// ---------------------------------------------------------------------------

void MetricsFile::add(const std::string& key, double value) { entries_.emplace_back(key, value); }
void MetricsFile::add(const std::string& key, long value) { entries_.emplace_back(key, value); }
void MetricsFile::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

bool MetricsFile::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == key; });
}

double MetricsFile::number(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k != key) continue;
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* l = std::get_if<long>(&v)) return static_cast<double>(*l);
    break;
  }
  throw std::out_of_range("metrics: no numeric key '" + key + "'");
}

std::string MetricsFile::text(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k != key) continue;
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    break;
  }
  throw std::out_of_range("metrics: no text key '" + key + "'");
}

std::string MetricsFile::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k + " = ";
    if (const auto* d = std::get_if<double>(&v)) {
      out += fmt17(*d);
    } else if (const auto* l = std::get_if<long>(&v)) {
      out += std::to_string(*l);
    } else {
      out += std::get<std::string>(v);
    }
    out += '\n';
  }
  return out;
}

void MetricsFile::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << serialize();
  if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<double> interpolate_knots(const std::vector<double>& knots, int n) {
  if (knots.size() < 4) throw std::invalid_argument("interpolate_knots: need at least 4 knots");
  if (n < static_cast<int>(knots.size())) {
    throw std::invalid_argument("interpolate_knots: fewer samples than knots");
  }
  const double step = (n - 1.0) / static_cast<double>(knots.size() - 1);
  std::vector<double> t(knots.size());
  for (std::size_t k = 0; k < knots.size(); ++k) t[k] = step * static_cast<double>(k);
  t.back() = n - 1.0;
  std::vector<double> values = knots;
  boost::math::interpolators::pchip<std::vector<double>> spline(std::move(t), std::move(values));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = spline(static_cast<double>(i));
  return out;
}

Matrix builtin_test_image(int rows, int cols) {
  Matrix img(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double u = (i + 0.5) / rows;
      const double v = (j + 0.5) / cols;
      double g = 0.3;
      if ((u - 0.35) * (u - 0.35) + (v - 0.4) * (v - 0.4) < 0.06) g = 0.8;
      if (u > 0.6 && u < 0.85 && v > 0.55 && v < 0.9) g = 0.1;
      if (u > 0.08 && u < 0.2 && v > 0.1 && v < 0.9) g = 0.2 + 0.6 * v;
      img(i, j) = g;
    }
  }
  return img;
}

ExperimentResult run_synthetic_h1(const ExperimentConfig& cfg, std::ostream& log) {
  const Matrix truth = synth_points_h1(cfg);
  const Matrix y = add_noise(truth, {NoiseKind::tangential, cfg.sigma, cfg.seed});
  const Graph g = Graph::line(static_cast<std::size_t>(cfg.n));
  const auto runs = run_models(cfg, g, y, log);

  ExperimentResult res;
  auto& mf = res.metrics;
  mf.add("experiment", std::string("synthetic-h1"));
  mf.add("n", static_cast<long>(cfg.n));
  add_noise_metrics(mf, y, truth);
  std::vector<Matrix> readouts;
  for (const auto& m : runs) {
    add_run_metrics(mf, m);
    readouts.push_back(readout_on_sheet(m.x));
    mf.add(m.name + ".mean_hyp_error", mean_hyp_error(readouts.back(), truth));
  }
  res.exit_code = finish(mf, runs);

  const fs::path dir = cfg.out;
  std::vector<std::string> header{"n", "r_true", "r_noisy"};
  for (const auto& m : runs) {
    if (m.ok) header.push_back("r_" + m.name);
  }
  CsvWriter csv(dir / "signal.csv", header);
  for (int i = 0; i < cfg.n; ++i) {
    std::vector<std::string> row{std::to_string(i), fmt17(std::asinh(truth(0, i))),
                                 fmt17(std::asinh(y(0, i)))};
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (runs[k].ok) row.push_back(fmt17(std::asinh(readouts[k](0, i))));
    }
    csv.row(row);
  }
  for (const auto& m : runs) write_trace(dir, m);
  mf.write(dir / "metrics.txt");
  return res;
}

ExperimentResult run_synthetic_h2(const ExperimentConfig& cfg, std::ostream& log) {
  const Matrix truth = synth_points_h2(cfg);
  const Matrix y = add_noise(truth, {NoiseKind::ambient, cfg.sigma, cfg.seed});
  const Graph g = Graph::line(static_cast<std::size_t>(cfg.n));
  const auto runs = run_models(cfg, g, y, log);

  ExperimentResult res;
  auto& mf = res.metrics;
  mf.add("experiment", std::string("synthetic-h2"));
  mf.add("n", static_cast<long>(cfg.n));
  add_noise_metrics(mf, y, truth);
  for (const auto& m : runs) {
    add_run_metrics(mf, m);
    mf.add(m.name + ".mean_hyp_error", mean_hyp_error(readout_on_sheet(m.x), truth));
  }
  res.exit_code = finish(mf, runs);

  const fs::path dir = cfg.out;
  std::vector<std::string> header{"n"};
  std::vector<const Matrix*> cols{&truth, &y};
  std::vector<std::string> names{"true", "noisy"};
  for (const auto& m : runs) {
    if (!m.ok) continue;
    cols.push_back(&m.x);
    names.push_back(m.name);
  }
  for (const auto& nm : names) {
    for (int c = 1; c <= 3; ++c) header.push_back(nm + "_x" + std::to_string(c));
  }
  CsvWriter csv(dir / "signal.csv", header);
  for (int i = 0; i < cfg.n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const Matrix* m : cols) {
      for (int c = 0; c < 3; ++c) row.push_back(fmt17((*m)(c, i)));
    }
    csv.row(row);
  }
  for (const auto& m : runs) write_trace(dir, m);
  mf.write(dir / "metrics.txt");
  return res;
}

ExperimentResult run_gaussian_image(const ExperimentConfig& cfg, std::ostream& log) {
  auto load = [&](const fs::path& p) {
    return cfg.normalize_intensity ? read_pgm_unit(p) : read_pgm(p).values;
  };

  ImageSeries series;
  Matrix clean;
  bool synthetic = true;
  if (!cfg.input.empty() && fs::is_directory(cfg.input)) {
    synthetic = false;
    for (const auto& p : list_pgm(cfg.input)) series.frames.push_back(load(p));
    if (series.size() < 2) {
      throw IoError(cfg.input + ": need at least 2 .pgm images in the series directory");
    }
    for (const auto& f : series.frames) {
      if (f.rows() != series.rows() || f.cols() != series.cols()) {
        throw IoError(cfg.input + ": images in the series differ in shape");
      }
    }
    if (!cfg.reference.empty()) {
      clean = load(cfg.reference);
      if (clean.rows() != series.rows() || clean.cols() != series.cols()) {
        throw IoError(cfg.reference + ": reference shape differs from the series");
      }
    }
  } else {
    clean = cfg.input.empty() ? builtin_test_image(cfg.rows, cfg.cols) : load(cfg.input);
    if (clean.size() < 2) throw IoError("test image needs at least 2 pixels");
    for (int k = 0; k < cfg.k_shots; ++k) {
      auto rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(k));
      std::normal_distribution<double> normal(0.0, 1.0);
      Matrix frame = clean;
      for (Eigen::Index i = 0; i < frame.rows(); ++i) {
        for (Eigen::Index j = 0; j < frame.cols(); ++j) frame(i, j) += cfg.sigma * normal(rng);
      }
      series.frames.push_back(std::move(frame));
    }
  }

  const GaussImage empirical = ml_estimates(series);
  const H2Image h2 = gauss_to_h2_image(empirical);
  const Graph g = Graph::grid(static_cast<std::size_t>(h2.rows), static_cast<std::size_t>(h2.cols));
  auto runs = run_models(cfg, g, h2.points, log);

  std::vector<GaussImage> denoised(runs.size());
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (!runs[k].ok) continue;
    try {
      denoised[k] = h2_image_to_gauss({h2.rows, h2.cols, runs[k].x}, true);
    } catch (const DomainError&) {
      runs[k].ok = false;
      log << runs[k].name << ": result has pixels off the hyperboloid  [FAILED]\n";
    }
  }

  ExperimentResult res;
  auto& mf = res.metrics;
  mf.add("experiment", std::string("gaussian-image"));
  mf.add("mode", std::string(synthetic ? "synthetic" : "series"));
  mf.add("rows", static_cast<long>(h2.rows));
  mf.add("cols", static_cast<long>(h2.cols));
  mf.add("k_shots", static_cast<long>(series.size()));

  const bool has_mu_ref = clean.size() > 0 && clean.squaredNorm() > 0.0;
  const bool has_sigma_ref = synthetic && cfg.sigma > 0.0;
  const Matrix sigma_ref = Matrix::Constant(h2.rows, h2.cols, cfg.sigma);
  auto add_field_metrics = [&](const std::string& k, const GaussImage& gi) {
    mf.add(k + "mu_mean", gi.mu.mean());
    mf.add(k + "sigma_mean", gi.sigma.mean());
    if (has_mu_ref) mf.add(k + "snr_mu", snr(clean, gi.mu));
    if (has_sigma_ref) mf.add(k + "snr_sigma", snr(sigma_ref, gi.sigma));
  };
  add_field_metrics("empirical.", empirical);
  mf.add("empirical.mae_eta", mae_eta(h2.points));
  for (std::size_t k = 0; k < runs.size(); ++k) {
    add_run_metrics(mf, runs[k]);
    if (runs[k].ok) add_field_metrics(runs[k].name + ".", denoised[k]);
  }
  res.exit_code = finish(mf, runs);

  const fs::path dir = cfg.out;
  if (synthetic) write_pgm16(dir / "clean.pgm", clean);
  write_pgm16(dir / "mu_empirical.pgm", empirical.mu);
  write_pgm16(dir / "sigma_empirical.pgm", empirical.sigma);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (!runs[k].ok) continue;
    write_pgm16(dir / ("mu_" + runs[k].name + ".pgm"), denoised[k].mu);
    write_pgm16(dir / ("sigma_" + runs[k].name + ".pgm"), denoised[k].sigma);
  }
  for (const auto& m : runs) write_trace(dir, m);
  mf.write(dir / "metrics.txt");
  return res;
}

ExperimentResult run_experiment(const ResolvedConfig& rc, std::ostream& log) {
  const ExperimentConfig& cfg = rc.config;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out)) {
    throw IoError(cfg.out + ": cannot create output directory");
  }
  if (cfg.threads > 0) set_num_threads(cfg.threads);

  ExperimentResult res;
  switch (cfg.experiment) {
    case ExperimentKind::synthetic_h1: res = run_synthetic_h1(cfg, log); break;
    case ExperimentKind::synthetic_h2: res = run_synthetic_h2(cfg, log); break;
    case ExperimentKind::gaussian_image: res = run_gaussian_image(cfg, log); break;
  }
  write_config_echo(rc, cfg.out);
  return res;
}

}  // namespace hyden
