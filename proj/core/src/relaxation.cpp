#include "hyden/relaxation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyden {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_tik_sizes(const Graph& g, const TikVars& vars) {
  require(vars.x.cols() == static_cast<Eigen::Index>(g.num_vertices()) && vars.x.rows() >= 2,
          "TikVars: x does not match graph");
  require(vars.v.size() == vars.x.cols(), "TikVars: v size mismatch");
  require(vars.ell.size() == static_cast<Eigen::Index>(g.num_edges()) &&
              vars.f.size() == vars.ell.size(),
          "TikVars: edge variable size mismatch");
}

void check_tv_sizes(const Graph& g, const TvVars& vars) {
  require(vars.x.cols() == static_cast<Eigen::Index>(g.num_vertices()) && vars.x.rows() >= 2,
          "TvVars: x does not match graph");
  require(vars.v.size() == vars.x.cols(), "TvVars: v size mismatch");
}

// Writes x and ~x into columns c, c+1 (and the mirrored rows) of the border.
template <typename Out>
void write_border(Out& out, const VectorRef& x, Eigen::Index c) {
  const Eigen::Index d1 = x.size();
  out.block(0, c, d1, 1) = x;
  out.block(0, c + 1, d1, 1) = x;
  out(d1 - 1, c + 1) = -x[d1 - 1];
  out.block(c, 0, 1, d1) = out.block(0, c, d1, 1).transpose();
  out.block(c + 1, 0, 1, d1) = out.block(0, c + 1, d1, 1).transpose();
}

}  // namespace

double inner(const MatrixSeq& a, const MatrixSeq& b) {
  require(a.size() == b.size() && a.dim() == b.dim(), "MatrixSeq size mismatch");
  return a.flat().dot(b.flat());
}

TikVars TikVars::zeros(Eigen::Index d, const Graph& g) {
  const auto N = static_cast<Eigen::Index>(g.num_vertices());
  const auto M = static_cast<Eigen::Index>(g.num_edges());
  return {Matrix::Zero(d + 1, N), Vector::Zero(M), Vector::Zero(M), Vector::Zero(N)};
}

TvVars TvVars::zeros(Eigen::Index d, const Graph& g) {
  const auto N = static_cast<Eigen::Index>(g.num_vertices());
  return {Matrix::Zero(d + 1, N), Vector::Zero(N)};
}

double inner(const TikVars& a, const TikVars& b) {
  return (a.x.array() * b.x.array()).sum() + a.ell.dot(b.ell) + a.f.dot(b.f) + a.v.dot(b.v);
}

double inner(const TvVars& a, const TvVars& b) {
  return (a.x.array() * b.x.array()).sum() + a.v.dot(b.v);
}

SymMat build_Q(const VectorRef& xn, const VectorRef& xm, double vn, double vm, double f,
               double ell) {
  require(xn.size() == xm.size() && xn.size() >= 2, "build_Q: point size mismatch");
  const Eigen::Index d1 = xn.size();
  SymMat q = SymMat::Zero(d1 + 4, d1 + 4);
  q.topLeftCorner(d1, d1).setIdentity();
  write_border(q, xn, d1);
  write_border(q, xm, d1 + 2);
  q.bottomRightCorner(4, 4) << vn, -1.0, f, ell,
                               -1.0, vn, ell, f,
                               f, ell, vm, -1.0,
                               ell, f, -1.0, vm;
  return q;
}

SymMat build_V(const VectorRef& xn, double vn) {
  require(xn.size() >= 2, "build_V: point too short");
  const Eigen::Index d1 = xn.size();
  SymMat m = SymMat::Zero(d1 + 2, d1 + 2);
  m.topLeftCorner(d1, d1).setIdentity();
  write_border(m, xn, d1);
  m.bottomRightCorner(2, 2) << vn, -1.0, -1.0, vn;
  return m;
}

SymMat offset_E(Eigen::Index d) {
  SymMat e = SymMat::Zero(d + 5, d + 5);
  e.topLeftCorner(d + 1, d + 1).setIdentity();
  e(d + 1, d + 2) = e(d + 2, d + 1) = -1.0;
  e(d + 3, d + 4) = e(d + 4, d + 3) = -1.0;
  return e;
}

SymMat offset_E_hat(Eigen::Index d) {
  SymMat e = SymMat::Zero(d + 3, d + 3);
  e.topLeftCorner(d + 1, d + 1).setIdentity();
  e(d + 1, d + 2) = e(d + 2, d + 1) = -1.0;
  return e;
}

CertificateCheck check_certificate(const SymMat& m, int expected_rank, double tol) {
  require(m.rows() == m.cols(), "check_certificate: matrix not square");
  const SymMat sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("check_certificate: eigendecomposition failed");
  }
  CertificateCheck out;
  const auto& ev = es.eigenvalues();
  if (ev.size() == 0) return out;
  out.min_eigenvalue = ev.minCoeff();
  out.max_eigenvalue = ev.maxCoeff();
  out.is_psd = out.min_eigenvalue >= -tol * std::max(out.max_eigenvalue, 1.0);
  const double cut = tol * out.max_eigenvalue;
  out.numerical_rank = static_cast<int>((ev.array() > cut).count());
  out.matches_rank = out.numerical_rank == expected_rank;
  return out;
}

void op_Q_edge(const Graph& g, const TikVars& vars, std::size_t e, Eigen::Ref<Matrix> out) {
  const Eigen::Index d1 = vars.x.rows();
  const auto [n, m] = g.edge(e);
  out.setZero();
  write_border(out, vars.x.col(static_cast<Eigen::Index>(n)), d1);
  write_border(out, vars.x.col(static_cast<Eigen::Index>(m)), d1 + 2);
  const double vn = vars.v[static_cast<Eigen::Index>(n)];
  const double vm = vars.v[static_cast<Eigen::Index>(m)];
  const double f = vars.f[static_cast<Eigen::Index>(e)];
  const double l = vars.ell[static_cast<Eigen::Index>(e)];
  out.bottomRightCorner(4, 4) << vn, 0.0, f, l,
                                 0.0, vn, l, f,
                                 f, l, vm, 0.0,
                                 l, f, 0.0, vm;
}

MatrixSeq op_Q(const Graph& g, const TikVars& vars) {
  check_tik_sizes(g, vars);
  MatrixSeq out(g.num_edges(), vars.x.rows() + 4);
  for (std::size_t e = 0; e < g.num_edges(); ++e) op_Q_edge(g, vars, e, out[e]);
  return out;
}

TikVars adj_Q(const Graph& g, const MatrixSeq& U) {
  require(U.size() == g.num_edges() && U.dim() >= 6, "adj_Q: size mismatch");
  const Eigen::Index d1 = U.dim() - 4;
  const Eigen::Index d = d1 - 1;
  TikVars out = TikVars::zeros(d, g);
  Vector sign = Vector::Ones(d1);
  sign[d] = -1.0;

  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto u = U[e];
    const auto ei = static_cast<Eigen::Index>(e);
    out.ell[ei] = 2.0 * (u(d1 + 3, d1) + u(d1 + 2, d1 + 1));
    out.f[ei] = 2.0 * (u(d1 + 2, d1) + u(d1 + 3, d1 + 1));
  }
  // Per-vertex sums follow ascending edge order so results do not depend on
  // how the per-edge work was scheduled.
  for (std::size_t n = 0; n < g.num_vertices(); ++n) {
    const auto ni = static_cast<Eigen::Index>(n);
    auto x = out.x.col(ni);
    double v = 0.0;
    for (std::size_t e : g.edges_as_first(n)) {
      const auto u = U[e];
      x += 2.0 * (u.block(0, d1, d1, 1) + sign.cwiseProduct(u.block(0, d1 + 1, d1, 1)));
      v += u(d1, d1) + u(d1 + 1, d1 + 1);
    }
    for (std::size_t e : g.edges_as_second(n)) {
      const auto u = U[e];
      x += 2.0 * (u.block(0, d1 + 2, d1, 1) + sign.cwiseProduct(u.block(0, d1 + 3, d1, 1)));
      v += u(d1 + 2, d1 + 2) + u(d1 + 3, d1 + 3);
    }
    out.v[ni] = v;
  }
  return out;
}

void op_V_vertex(const TvVars& vars, std::size_t n, Eigen::Ref<Matrix> out) {
  const Eigen::Index d1 = vars.x.rows();
  const auto ni = static_cast<Eigen::Index>(n);
  out.setZero();
  write_border(out, vars.x.col(ni), d1);
  out(d1, d1) = vars.v[ni];
  out(d1 + 1, d1 + 1) = vars.v[ni];
}

MatrixSeq op_V(const Graph& g, const TvVars& vars) {
  check_tv_sizes(g, vars);
  MatrixSeq out(g.num_vertices(), vars.x.rows() + 2);
  for (std::size_t n = 0; n < g.num_vertices(); ++n) op_V_vertex(vars, n, out[n]);
  return out;
}

TvVars adj_V(const Graph& g, const MatrixSeq& U) {
  require(U.size() == g.num_vertices() && U.dim() >= 4, "adj_V: size mismatch");
  const Eigen::Index d1 = U.dim() - 2;
  TvVars out = TvVars::zeros(d1 - 1, g);
  Vector sign = Vector::Ones(d1);
  sign[d1 - 1] = -1.0;
  for (std::size_t n = 0; n < g.num_vertices(); ++n) {
    const auto u = U[n];
    const auto ni = static_cast<Eigen::Index>(n);
    out.x.col(ni) = 2.0 * (u.block(0, d1, d1, 1) + sign.cwiseProduct(u.block(0, d1 + 1, d1, 1)));
    out.v[ni] = u(d1, d1) + u(d1 + 1, d1 + 1);
  }
  return out;
}

void PsdProjector::project(const Eigen::Ref<const Matrix>& in, Eigen::Ref<Matrix> out) {
  sym_ = 0.5 * (in + in.transpose());
  solver_.compute(sym_, Eigen::ComputeEigenvectors);
  if (solver_.info() != Eigen::Success) {
    throw std::runtime_error("proj_psd: eigendecomposition failed");
  }
  const auto& V = solver_.eigenvectors();
  out.noalias() = V * solver_.eigenvalues().cwiseMax(0.0).asDiagonal() * V.transpose();
}

SymMat proj_psd(const SymMat& m) {
  require(m.rows() == m.cols(), "proj_psd: matrix not square");
  SymMat out(m.rows(), m.cols());
  PsdProjector(m.rows()).project(m, out);
  return out;
}

}  // namespace hyden
