// Semidefinite encodings of the hyperbolic sheet.
//
// For an edge (n, m) the certificate Q_(n,m) in S_{d+5} is
//
//     [ I      x_n  ~x_n  x_m  ~x_m ]
//     [ x_n^T  v_n  -1    f    l    ]
//     [ ~x_n^T -1   v_n   l    f    ]
//     [ x_m^T  f    l     v_m  -1   ]
//     [ ~x_m^T l    f     -1   v_m  ]
//
// and for a vertex the certificate V_n in S_{d+3} is the leading (d+3) block
// of the same pattern. Both are PSD with rank d+1 exactly when the points lie
// on the sheet and the auxiliary scalars equal |x|^2, <x_n, x_m>,
// eta(x_n, x_m). Subtracting the constant offsets E / E_hat turns the builders
// into the linear operators op_Q / op_V used by the ADMM splittings.
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "hyden/geometry.hpp"
#include "hyden/graph.hpp"

namespace hyden {

using SymMat = Eigen::MatrixXd;

/// Contiguous sequence of equally sized square matrices, one per edge or
/// vertex, stored back to back in column-major order.
class MatrixSeq {
 public:
  MatrixSeq() = default;
  MatrixSeq(std::size_t count, Eigen::Index dim)
      : count_(count), dim_(dim), data_(count * static_cast<std::size_t>(dim * dim), 0.0) {}

  std::size_t size() const { return count_; }
  Eigen::Index dim() const { return dim_; }

  Eigen::Map<Matrix> operator[](std::size_t i) {
    return {data_.data() + i * static_cast<std::size_t>(dim_ * dim_), dim_, dim_};
  }
  Eigen::Map<const Matrix> operator[](std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(dim_ * dim_), dim_, dim_};
  }

  Eigen::Map<Vector> flat() { return {data_.data(), static_cast<Eigen::Index>(data_.size())}; }
  Eigen::Map<const Vector> flat() const {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }

  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

 private:
  std::size_t count_ = 0;
  Eigen::Index dim_ = 0;
  std::vector<double> data_;
};

/// Sum of Frobenius inner products over the sequence.
double inner(const MatrixSeq& a, const MatrixSeq& b);

/// Variables of the relaxed Tikhonov model: points x ((d+1) x N), and per-edge
/// l, f, per-vertex v.
struct TikVars {
  Matrix x;
  Vector ell;
  Vector f;
  Vector v;

  static TikVars zeros(Eigen::Index d, const Graph& g);
  Eigen::Index dim() const { return x.rows() - 1; }
};

/// Variables of the relaxed TV model.
struct TvVars {
  Matrix x;
  Vector v;

  static TvVars zeros(Eigen::Index d, const Graph& g);
  Eigen::Index dim() const { return x.rows() - 1; }
};

double inner(const TikVars& a, const TikVars& b);
double inner(const TvVars& a, const TvVars& b);

SymMat build_Q(const VectorRef& xn, const VectorRef& xm, double vn, double vm, double f,
               double ell);
SymMat build_V(const VectorRef& xn, double vn);

/// diag(I_{d+1}, [[0,-1],[-1,0]], [[0,-1],[-1,0]])
SymMat offset_E(Eigen::Index d);
/// diag(I_{d+1}, [[0,-1],[-1,0]])
SymMat offset_E_hat(Eigen::Index d);

struct CertificateCheck {
  bool is_psd = false;
  int numerical_rank = 0;
  bool matches_rank = false;  // numerical_rank == expected_rank
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

/// Relative rank/PSD threshold used throughout.
inline constexpr double kRankTolerance = 1e-9;

/// PSD iff lambda_min >= -tol * max(lambda_max, 1); rank counts eigenvalues
/// above tol * lambda_max. The input is symmetrized first.
CertificateCheck check_certificate(const SymMat& m, int expected_rank,
                                   double tol = kRankTolerance);

/// op_Q restricted to one edge, written into `out` ((d+5) x (d+5)).
void op_Q_edge(const Graph& g, const TikVars& vars, std::size_t e, Eigen::Ref<Matrix> out);
MatrixSeq op_Q(const Graph& g, const TikVars& vars);
TikVars adj_Q(const Graph& g, const MatrixSeq& U);

void op_V_vertex(const TvVars& vars, std::size_t n, Eigen::Ref<Matrix> out);
MatrixSeq op_V(const Graph& g, const TvVars& vars);
TvVars adj_V(const Graph& g, const MatrixSeq& U);

/// Reusable workspace for Frobenius projections onto the PSD cone.
class PsdProjector {
 public:
  explicit PsdProjector(Eigen::Index dim) : solver_(dim), sym_(dim, dim) {}

  /// out = V max(Sigma, 0) V^T for the eigendecomposition of (in + in^T) / 2.
  /// Throws std::runtime_error if the eigensolver fails. `in` and `out` may alias.
  void project(const Eigen::Ref<const Matrix>& in, Eigen::Ref<Matrix> out);

 private:
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
  Matrix sym_;
};

SymMat proj_psd(const SymMat& m);

}  // namespace hyden
