// Proximal operators of anisotropic total variation on line and grid graphs.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hyden/geometry.hpp"
#include "hyden/graph.hpp"

namespace hyden {

/// Exact minimizer of 1/2 |x - y|^2 + w * sum_k |x_{k+1} - x_k|.
///
/// Direct (non-iterative) algorithm in the taut-string family: the signal is
/// scanned once while tracking the admissible value range of the current
/// segment, backtracking only to the last breakpoint. Runs in O(N) in
/// practice. `out` must have the same length as `y` and must not alias it.
void tv1d_prox(std::span<const double> y, double w, std::span<double> out);
std::vector<double> tv1d_prox(std::span<const double> y, double w);

struct Tv2dOptions {
  int max_iters = 50;
  /// Early exit when successive iterates differ by less than this (max-norm).
  double tolerance = 1e-10;
};

/// Douglas-Rachford state for warm-starting tv2d_prox across calls with
/// slowly varying inputs. An empty matrix means "cold start".
struct Tv2dWarmStart {
  Matrix state;
};

struct Tv2dStats {
  int iterations = 0;
  /// Objective of the returned iterate after each inner iteration; the
  /// returned iterate is the best one seen, so this is nonincreasing.
  std::vector<double> objective_trace;
};

/// Approximate minimizer of 1/2 |x - y|^2 + w * (TV_rows(x) + TV_cols(x)) for
/// a rows x cols field. Douglas-Rachford (step and relaxation 1) between the
/// row-TV and column-TV terms, each half carrying half of the quadratic so
/// that both resolvents reduce to exact 1D solves.
Matrix tv2d_prox(const Matrix& y, double w, const Tv2dOptions& opts = {},
                 Tv2dWarmStart* warm = nullptr, Tv2dStats* stats = nullptr);

/// 1/2 |x - y|^2 + w * (TV_rows(x) + TV_cols(x)).
double tv2d_objective(const Matrix& x, const Matrix& y, double w);

/// Anisotropic TV of a point set: sum over edges of |x_n - x_m|_1.
double tv_value(const Graph& g, const Matrix& x);

/// Coordinatewise prox of w * TV on a line or grid graph. `x` is (d+1) x N.
/// `warm` (one entry per channel) is only used for grid graphs.
/// Throws std::invalid_argument for general graphs.
Matrix tv_prox_graph(const Graph& g, const Matrix& y, double w, const Tv2dOptions& opts = {},
                     std::vector<Tv2dWarmStart>* warm = nullptr);

}  // namespace hyden
