#include "hyden/solvers.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "hyden/metrics.hpp"

namespace hyden {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double ordered_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

double relative_residual(double residual_sq, double norm_sq) {
  return std::sqrt(residual_sq) / std::max(1.0, std::sqrt(norm_sq));
}

template <typename Solver, typename Objective>
SolveReport drive(Solver& solver, const StopOptions& opts, Objective&& objective,
                  bool has_u_residual) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.trace.reserve(static_cast<std::size_t>(std::max(0, std::min(opts.max_iter, 100000))));

  ConvergenceSnapshot snap;
  StopDecision decision = stopping_check(snap, opts);
  while (!decision.stop) {
    solver.step();
    IterationRecord rec;
    rec.iteration = solver.iteration();
    rec.objective = objective(solver.vars());
    rec.mae_eta = mae_eta(solver.vars().x);
    rec.primal_residual = solver.primal_residual();
    rec.dual_residual = solver.dual_residual();
    if constexpr (requires { solver.primal_residual_u(); }) {
      rec.primal_residual_u = solver.primal_residual_u();
    }
    report.trace.push_back(rec);

    snap.previous_mae = snap.mae;
    snap.mae = rec.mae_eta;
    snap.iteration = rec.iteration;
    snap.dual_residual = rec.dual_residual;
    snap.primal_residual =
        has_u_residual ? std::max(rec.primal_residual, rec.primal_residual_u) : rec.primal_residual;
    if (!std::isfinite(rec.objective)) snap.primal_residual = std::nan("");
    decision = stopping_check(snap, opts);
  }

  report.iterations = solver.iteration();
  report.reason = decision.reason;
  if (!report.trace.empty()) {
    const auto& last = report.trace.back();
    report.objective = last.objective;
    report.mae_eta = last.mae_eta;
    report.primal_residual = last.primal_residual;
    report.primal_residual_u = last.primal_residual_u;
    report.dual_residual = last.dual_residual;
  } else {
    report.objective = objective(solver.vars());
    report.mae_eta = mae_eta(solver.vars().x);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::none: return "none";
    case StopReason::max_iter: return "max_iter";
    case StopReason::converged: return "converged";
    case StopReason::diverged: return "diverged";
  }
  return "unknown";
}

void TikhonovProblem::validate() const {
  require(lambda > 0.0, "TikhonovProblem: lambda must be positive");
  require(rho > 0.0, "TikhonovProblem: rho must be positive");
  require(y.rows() >= 2, "TikhonovProblem: points need dimension d+1 >= 2");
  require(y.cols() == static_cast<Eigen::Index>(graph.num_vertices()),
          "TikhonovProblem: data does not match graph");
  require(graph.is_connected(), "TikhonovProblem: graph is not connected");
}

void TvProblem::validate() const {
  require(mu > 0.0, "TvProblem: mu must be positive");
  require(rho > 0.0, "TvProblem: rho must be positive");
  require(y.rows() >= 2, "TvProblem: points need dimension d+1 >= 2");
  require(y.cols() == static_cast<Eigen::Index>(graph.num_vertices()),
          "TvProblem: data does not match graph");
  require(graph.kind() != GraphKind::general, "TvProblem: only line and grid graphs supported");
}

StopDecision stopping_check(const ConvergenceSnapshot& s, const StopOptions& opts) {
  if (s.iteration >= opts.max_iter) return {true, StopReason::max_iter};
  if (s.iteration == 0) return {};
  if (std::isnan(s.primal_residual) || !std::isfinite(s.mae)) {
    return {true, StopReason::diverged};
  }
  if (s.primal_residual < opts.eps_primal && s.dual_residual < opts.eps_dual &&
      std::isfinite(s.previous_mae) &&
      std::abs(s.mae - s.previous_mae) < opts.eps_mae) {
    return {true, StopReason::converged};
  }
  return {};
}

double objective_J(const TikhonovProblem& p, const TikVars& vars) {
  require(vars.x.rows() == p.y.rows() && vars.x.cols() == p.y.cols(),
          "objective_J: size mismatch");
  require(vars.f.size() == static_cast<Eigen::Index>(p.graph.num_edges()),
          "objective_J: edge variable size mismatch");
  double fidelity = 0.0;
  for (Eigen::Index n = 0; n < p.y.cols(); ++n) {
    fidelity += vars.v[n] - 2.0 * vars.x.col(n).dot(p.y.col(n));
  }
  double smooth = 0.0;
  for (std::size_t e = 0; e < p.graph.num_edges(); ++e) {
    const auto [n, m] = p.graph.edge(e);
    smooth += vars.v[static_cast<Eigen::Index>(n)] + vars.v[static_cast<Eigen::Index>(m)] -
              2.0 * vars.f[static_cast<Eigen::Index>(e)];
  }
  return 0.5 * fidelity + 0.5 * p.lambda * smooth;
}

double objective_K(const TvProblem& p, const TvVars& vars) {
  require(vars.x.rows() == p.y.rows() && vars.x.cols() == p.y.cols(),
          "objective_K: size mismatch");
  double fidelity = 0.0;
  for (Eigen::Index n = 0; n < p.y.cols(); ++n) {
    fidelity += vars.v[n] - 2.0 * vars.x.col(n).dot(p.y.col(n));
  }
  return 0.5 * fidelity + p.mu * tv_value(p.graph, vars.x);
}

// ---------------------------------------------------------------------------

TikhonovAdmm::TikhonovAdmm(TikhonovProblem problem) : p_(std::move(problem)) {
  p_.validate();
  d_ = p_.y.rows() - 1;
  vars_ = TikVars::zeros(d_, p_.graph);
  const std::size_t M = p_.graph.num_edges();
  U_ = MatrixSeq(M, d_ + 5);
  Z_ = MatrixSeq(M, d_ + 5);
  W_ = MatrixSeq(M, d_ + 5);
  E_ = offset_E(d_);
  edge_residual_.assign(M, 0.0);
  edge_norm_.assign(M, 0.0);
  edge_change_.assign(M, 0.0);
}

void TikhonovAdmm::step() {
  const Graph& g = p_.graph;
  const double rho = p_.rho;
  const double lambda = p_.lambda;

  W_.flat() = U_.flat() - Z_.flat();
  const TikVars a = adj_Q(g, W_);

  for (Eigen::Index n = 0; n < vars_.x.cols(); ++n) {
    const auto nu = static_cast<double>(g.degree(static_cast<std::size_t>(n)));
    Vector xn = (a.x.col(n) + p_.y.col(n) / rho) / (4.0 * nu);
    xn[d_] = std::max(xn[d_], 1.0);
    vars_.x.col(n) = xn;
    vars_.v[n] = (a.v[n] - (1.0 + nu * lambda) / (2.0 * rho)) / (2.0 * nu);
  }
  vars_.ell = 0.25 * a.ell;
  vars_.f = 0.25 * (a.f.array() + lambda / rho).matrix();

  const auto M = static_cast<std::ptrdiff_t>(g.num_edges());
  const Eigen::Index D = d_ + 5;
#pragma omp parallel
  {
    PsdProjector projector(D);
    Matrix q(D, D), r(D, D), prev(D, D);
#pragma omp for schedule(static)
    for (std::ptrdiff_t ei = 0; ei < M; ++ei) {
      const auto e = static_cast<std::size_t>(ei);
      op_Q_edge(g, vars_, e, q);
      auto U = U_[e];
      auto Z = Z_[e];
      prev = U;
      projector.project(q + E_ + Z, U);
      U -= E_;
      r = q - U;
      Z += r;
      edge_residual_[e] = r.squaredNorm();
      edge_norm_[e] = U.squaredNorm();
      edge_change_[e] = (U - prev).squaredNorm();
    }
  }
  const double norm_sq = ordered_sum(edge_norm_);
  residual_ = relative_residual(ordered_sum(edge_residual_), norm_sq);
  dual_residual_ = relative_residual(ordered_sum(edge_change_), norm_sq);
  ++iteration_;
}

TvAdmm::TvAdmm(TvProblem problem) : p_(std::move(problem)) {
  p_.validate();
  d_ = p_.y.rows() - 1;
  vars_ = TvVars::zeros(d_, p_.graph);
  const std::size_t N = p_.graph.num_vertices();
  u_ = Matrix::Zero(d_ + 1, static_cast<Eigen::Index>(N));
  z_ = Matrix::Zero(d_ + 1, static_cast<Eigen::Index>(N));
  U_ = MatrixSeq(N, d_ + 3);
  Z_ = MatrixSeq(N, d_ + 3);
  W_ = MatrixSeq(N, d_ + 3);
  E_hat_ = offset_E_hat(d_);
  vertex_residual_.assign(N, 0.0);
  vertex_norm_.assign(N, 0.0);
  vertex_change_.assign(N, 0.0);
}

void TvAdmm::step() {
  const Graph& g = p_.graph;
  const double rho = p_.rho;

  W_.flat() = U_.flat() - Z_.flat();
  const TvVars a = adj_V(g, W_);

  const Matrix centre = (a.x + p_.y / rho + (u_ - z_)) / 5.0;
  vars_.x = tv_prox_graph(g, centre, p_.mu / (5.0 * rho), p_.tv_options, &warm_);
  vars_.v = (0.5 * a.v.array() - 0.25 / rho).matrix();

  const auto N = static_cast<std::ptrdiff_t>(g.num_vertices());
  const Eigen::Index D = d_ + 3;
#pragma omp parallel
  {
    PsdProjector projector(D);
    Matrix q(D, D), r(D, D), prev(D, D);
#pragma omp for schedule(static)
    for (std::ptrdiff_t ni = 0; ni < N; ++ni) {
      const auto n = static_cast<std::size_t>(ni);
      op_V_vertex(vars_, n, q);
      auto U = U_[n];
      auto Z = Z_[n];
      prev = U;
      projector.project(q + E_hat_ + Z, U);
      U -= E_hat_;
      r = q - U;
      Z += r;
      vertex_residual_[n] = r.squaredNorm();
      vertex_norm_[n] = U.squaredNorm();
      vertex_change_[n] = (U - prev).squaredNorm();
    }
  }
  const double norm_sq = ordered_sum(vertex_norm_);
  residual_ = relative_residual(ordered_sum(vertex_residual_), norm_sq);

  const Matrix u_prev = u_;
  u_ = vars_.x + z_;
  for (Eigen::Index n = 0; n < u_.cols(); ++n) u_(d_, n) = std::max(u_(d_, n), 1.0);
  const Matrix diff = vars_.x - u_;
  z_ += diff;
  residual_u_ = relative_residual(diff.squaredNorm(), u_.squaredNorm());
  dual_residual_ = relative_residual(ordered_sum(vertex_change_) + (u_ - u_prev).squaredNorm(),
                                     norm_sq + u_.squaredNorm());
  ++iteration_;
}

TikhonovResult admm_tikhonov(const TikhonovProblem& p, const StopOptions& opts) {
  TikhonovAdmm solver(p);
  auto report = drive(
      solver, opts, [&](const TikVars& v) { return objective_J(solver.problem(), v); }, false);
  return {solver.vars(), std::move(report)};
}

TvResult admm_tv(const TvProblem& p, const StopOptions& opts) {
  TvAdmm solver(p);
  auto report = drive(
      solver, opts, [&](const TvVars& v) { return objective_K(solver.problem(), v); }, true);
  return {solver.vars(), std::move(report)};
}

void set_num_threads(int n) { omp_set_num_threads(std::max(1, n)); }

int max_threads() { return omp_get_num_procs(); }

}  // namespace hyden
