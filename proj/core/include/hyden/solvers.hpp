// ADMM solvers for the relaxed Tikhonov and relaxed TV denoising models.
//
// Tikhonov: minimize J(x, f, v) over x in A_{d+1}^N, l, f, v subject to
// Q_(n,m) >= 0 for every edge. The splitting is op_Q(x, l, f, v) = U with
// U_e + E >= 0.
//
// TV: minimize K(x, v) over x in A_{d+1}^N, v subject to V_n >= 0 for every
// vertex. The splitting is x = u with u in A_{d+1}^N, and op_V(x, v) = U with
// U_n + E_hat >= 0.
//
// All primal and dual variables start at zero. The dual variables Z, z are
// scaled (the penalty rho is folded in).
#pragma once

#include <limits>
#include <vector>

#include "hyden/graph.hpp"
#include "hyden/relaxation.hpp"
#include "hyden/tvprox.hpp"

namespace hyden {

struct TikhonovProblem {
  Graph graph;
  Matrix y;  // (d+1) x N data
  double lambda = 1.0;
  double rho = 1.0;

  void validate() const;
};

struct TvProblem {
  Graph graph;
  Matrix y;
  double mu = 1.0;
  double rho = 1.0;
  Tv2dOptions tv_options;

  void validate() const;
};

struct StopOptions {
  int max_iter = 20000;
  double eps_primal = 1e-10;
  double eps_mae = 1e-10;
  /// Bound on the relative change of the splitting variables between
  /// iterations (the scaled dual residual).
  double eps_dual = 1e-10;
};

enum class StopReason { none, max_iter, converged, diverged };

const char* to_string(StopReason r);

struct StopDecision {
  bool stop = false;
  StopReason reason = StopReason::none;
};

/// Convergence state after `iteration` completed iterations.
struct ConvergenceSnapshot {
  int iteration = 0;
  /// Largest of the relative primal residuals of the splitting.
  double primal_residual = std::numeric_limits<double>::infinity();
  double mae = std::numeric_limits<double>::quiet_NaN();
  double previous_mae = std::numeric_limits<double>::quiet_NaN();
  double dual_residual = std::numeric_limits<double>::infinity();
};

/// Stops at max_iter, on non-finite diagnostics, or once the primal residual
/// is below eps_primal, the dual residual below eps_dual, and the sheet error
/// changed by less than eps_mae.
StopDecision stopping_check(const ConvergenceSnapshot& s, const StopOptions& opts);

struct IterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double mae_eta = 0.0;
  double primal_residual = 0.0;    // |op(vars) - U| / max(1, |U|)
  double primal_residual_u = 0.0;  // TV only: |x - u| / max(1, |u|)
  double dual_residual = 0.0;      // |U - U_prev| / max(1, |U|), TV adds the u part
};

struct SolveReport {
  int iterations = 0;
  double objective = 0.0;
  double mae_eta = 0.0;
  double primal_residual = 0.0;
  double primal_residual_u = 0.0;
  double dual_residual = 0.0;
  double wall_seconds = 0.0;
  StopReason reason = StopReason::none;
  std::vector<IterationRecord> trace;
};

/// 1/2 sum_n (v_n - 2<x_n, y_n>) + lambda/2 sum_(n,m) (v_n + v_m - 2 f_(n,m)).
double objective_J(const TikhonovProblem& p, const TikVars& vars);
/// 1/2 sum_n (v_n - 2<x_n, y_n>) + mu TV(x).
double objective_K(const TvProblem& p, const TvVars& vars);

class TikhonovAdmm {
 public:
  explicit TikhonovAdmm(TikhonovProblem problem);

  void step();

  const TikhonovProblem& problem() const { return p_; }
  const TikVars& vars() const { return vars_; }
  const MatrixSeq& U() const { return U_; }
  const MatrixSeq& Z() const { return Z_; }
  int iteration() const { return iteration_; }
  double primal_residual() const { return residual_; }
  double dual_residual() const { return dual_residual_; }

 private:
  TikhonovProblem p_;
  Eigen::Index d_;
  TikVars vars_;
  MatrixSeq U_, Z_, W_;
  SymMat E_;
  std::vector<double> edge_residual_, edge_norm_, edge_change_;
  int iteration_ = 0;
  double residual_ = std::numeric_limits<double>::infinity();
  double dual_residual_ = std::numeric_limits<double>::infinity();
};

class TvAdmm {
 public:
  explicit TvAdmm(TvProblem problem);

  void step();

  const TvProblem& problem() const { return p_; }
  const TvVars& vars() const { return vars_; }
  const Matrix& u() const { return u_; }
  const Matrix& z() const { return z_; }
  const MatrixSeq& U() const { return U_; }
  const MatrixSeq& Z() const { return Z_; }
  int iteration() const { return iteration_; }
  double primal_residual() const { return residual_; }
  double primal_residual_u() const { return residual_u_; }
  double dual_residual() const { return dual_residual_; }

 private:
  TvProblem p_;
  Eigen::Index d_;
  TvVars vars_;
  Matrix u_, z_;
  MatrixSeq U_, Z_, W_;
  SymMat E_hat_;
  std::vector<Tv2dWarmStart> warm_;
  std::vector<double> vertex_residual_, vertex_norm_, vertex_change_;
  int iteration_ = 0;
  double residual_ = std::numeric_limits<double>::infinity();
  double residual_u_ = std::numeric_limits<double>::infinity();
  double dual_residual_ = std::numeric_limits<double>::infinity();
};

struct TikhonovResult {
  TikVars vars;
  SolveReport report;
};

struct TvResult {
  TvVars vars;
  SolveReport report;
};

TikhonovResult admm_tikhonov(const TikhonovProblem& p, const StopOptions& opts = {});
TvResult admm_tv(const TvProblem& p, const StopOptions& opts = {});

/// Worker threads used for the per-edge / per-vertex projections. Results are
/// bitwise identical for every thread count.
void set_num_threads(int n);
int max_threads();

}  // namespace hyden
