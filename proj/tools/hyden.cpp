// Command line runner for the denoising experiments.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyden/config.hpp"
#include "hyden/experiment.hpp"
#include "hyden/geometry.hpp"
#include "hyden/image_io.hpp"
#include "hyden/self_check.hpp"

namespace {

using hyden::ConfigOverride;
using hyden::ExperimentKind;

struct Flags {
  std::string config;
  std::string model;
  double lambda = 0, mu = 0, rho = 0, rho_tikhonov = 0, rho_tv = 0, sigma = 0, tol = 0;
  std::uint64_t seed = 0;
  int n = 0, rows = 0, cols = 0, k_shots = 0, max_iter = 0, threads = 0, tv_inner_iters = 0;
  std::string input, reference, out;
};

// Options that were given on the command line, as JSON literals.
std::vector<ConfigOverride> collect(const CLI::App& sub, const Flags& f) {
  std::vector<ConfigOverride> out;
  auto given = [&](const char* opt) {
    const CLI::Option* o = sub.get_option_no_throw(opt);
    return o != nullptr && o->count() > 0;
  };
  auto num = [&](const char* opt, const char* key, auto value) {
    if (given(opt)) out.emplace_back(key, nlohmann::json(value).dump());
  };
  auto str = [&](const char* opt, const char* key, const std::string& value) {
    if (given(opt)) out.emplace_back(key, nlohmann::json(value).dump());
  };
  str("--model", "model", f.model);
  num("--lambda", "lambda", f.lambda);
  num("--mu", "mu", f.mu);
  num("--rho", "rho", f.rho);
  num("--rho-tikhonov", "rho_tikhonov", f.rho_tikhonov);
  num("--rho-tv", "rho_tv", f.rho_tv);
  num("--sigma", "sigma", f.sigma);
  num("--seed", "seed", f.seed);
  num("--n", "n", f.n);
  num("--rows", "rows", f.rows);
  num("--cols", "cols", f.cols);
  num("--k-shots", "k_shots", f.k_shots);
  num("--max-iter", "max_iter", f.max_iter);
  num("--tol", "tol", f.tol);
  num("--threads", "threads", f.threads);
  num("--tv-inner-iters", "tv_inner_iters", f.tv_inner_iters);
  str("--input", "input", f.input);
  str("--reference", "reference", f.reference);
  str("--out", "out", f.out);
  return out;
}

CLI::App* add_experiment(CLI::App& app, const char* name, const char* about, Flags& f,
                         ExperimentKind kind) {
  CLI::App* sub = app.add_subcommand(name, about);
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  sub->add_option("--model", f.model, "tikhonov, tv or both")
      ->check(CLI::IsMember({"tikhonov", "tv", "both"}));
  sub->add_option("--lambda", f.lambda, "Tikhonov weight");
  sub->add_option("--mu", f.mu, "TV weight");
  sub->add_option("--rho", f.rho, "ADMM penalty for both models");
  sub->add_option("--rho-tikhonov", f.rho_tikhonov, "ADMM penalty, Tikhonov model");
  sub->add_option("--rho-tv", f.rho_tv, "ADMM penalty, TV model");
  sub->add_option("--sigma", f.sigma, "noise level");
  sub->add_option("--seed", f.seed, "random seed");
  if (kind == ExperimentKind::gaussian_image) {
    sub->add_option("--rows", f.rows, "rows of the built-in test image");
    sub->add_option("--cols", f.cols, "columns of the built-in test image");
    sub->add_option("--k-shots", f.k_shots, "number of noisy shots");
    sub->add_option("--input", f.input, "test image (.pgm) or directory of a .pgm series");
    sub->add_option("--reference", f.reference, "clean mean image for a real series");
    sub->add_option("--tv-inner-iters", f.tv_inner_iters, "iterations per 2D TV prox");
  } else {
    sub->add_option("--n", f.n, "signal length");
  }
  sub->add_option("--max-iter", f.max_iter, "ADMM iteration cap");
  sub->add_option("--tol", f.tol, "largest admissible mae_eta of written results");
  sub->add_option("--threads", f.threads, "worker threads (0: OpenMP default)");
  sub->add_option("--out", f.out, "output directory");
  return sub;
}

int run(ExperimentKind kind, const CLI::App& sub, const Flags& f) {
  try {
    std::optional<std::filesystem::path> file;
    if (!f.config.empty()) file = f.config;
    const auto rc = hyden::resolve_config(kind, file, collect(sub, f));
    const auto res = hyden::run_experiment(rc, std::cout);
    std::cout << "status: " << (res.exit_code == hyden::kExitOk ? "ok" : "failed")
              << "  (artifacts in " << rc.config.out << ")\n";
    return res.exit_code;
  } catch (const hyden::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return hyden::kExitConfig;
  } catch (const hyden::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return hyden::kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return hyden::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hyden::kExitNotConverged;
  }
}

int run_check() {
  int failed = 0;
  for (const auto& r : hyden::run_self_check()) {
    std::printf("%s  %s  (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failed;
  }
  return failed == 0 ? hyden::kExitOk : hyden::kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Denoising of hyperbolic-valued data by convex relaxation"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* h1 = add_experiment(app, "synthetic-h1", "line signal on H_1, tangential noise", f,
                                ExperimentKind::synthetic_h1);
  CLI::App* h2 = add_experiment(app, "synthetic-h2", "line signal on H_2, ambient noise", f,
                                ExperimentKind::synthetic_h2);
  CLI::App* img = add_experiment(app, "gaussian-image", "Gaussian image series on H_2", f,
                                 ExperimentKind::gaussian_image);
  CLI::App* check = app.add_subcommand("check", "fast property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hyden::kExitConfig;
  }

  if (h1->parsed()) return run(ExperimentKind::synthetic_h1, *h1, f);
  if (h2->parsed()) return run(ExperimentKind::synthetic_h2, *h2, f);
  if (img->parsed()) return run(ExperimentKind::gaussian_image, *img, f);
  if (check->parsed()) return run_check();
  return hyden::kExitConfig;
}
