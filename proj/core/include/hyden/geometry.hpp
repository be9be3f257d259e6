// Lorentz-model primitives for the hyperbolic sheet
//
//   H_d = { x in R^{d+1} : eta(x, x) = -1, x_{d+1} > 0 },
//   eta(a, b) = a_1 b_1 + ... + a_d b_d - a_{d+1} b_{d+1},
//
// and the halfspace A_{d+1} = R^d x [1, inf) that contains it. Points are
// plain Eigen vectors of length d+1; point sets are (d+1) x N matrices with
// one node per column.
#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace hyden {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using HPoint = Eigen::VectorXd;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Thrown when an input lies outside the domain of a geometric map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |eta(x,x) + 1| below this counts as "on the sheet" for preconditions.
inline constexpr double kSheetTolerance = 1e-9;
/// arcosh arguments in [1 - window, 1) are clamped to 1.
inline constexpr double kAcoshClampWindow = 1e-12;
/// Tangent vectors with Minkowski norm below this map to their base point.
inline constexpr double kExpMapCutoff = 1e-12;

double minkowski(const VectorRef& a, const VectorRef& b);

/// Copy of `a` with its last entry negated, so that <a, tilde(b)> = eta(a, b).
Vector tilde(const VectorRef& a);

/// Euclidean projection onto A_{d+1}: the last coordinate becomes max(a_{d+1}, 1).
Vector proj_halfspace(const VectorRef& a);

bool on_sheet(const VectorRef& a, double tol = kSheetTolerance);

/// arcosh(-eta(a, b)). Throws DomainError if -eta(a, b) falls below 1 by more
/// than the clamping window (scaled by a_{d+1} b_{d+1}).
double hyp_distance(const VectorRef& a, const VectorRef& b);

/// Radial renormalization a / sqrt(-eta(a, a)); requires a timelike point
/// with a positive last coordinate.
HPoint snap_to_sheet(const VectorRef& a);

/// Vertical lift (s, sqrt(1 + |s|^2)) of the spatial part s of `a`. Defined
/// for every input, unlike snap_to_sheet.
HPoint lift_to_sheet(const VectorRef& a);

HPoint param_h1(double r);
HPoint param_h2(double r, double s);

struct TangentVector {
  HPoint base;
  Vector dir;
};

/// Exponential map of the hyperboloid. Throws DomainError when `dir` is not
/// tangent at `base`.
HPoint exp_map(const TangentVector& v);

/// d vectors spanning the tangent space at `base`, orthonormal under eta.
/// Gram-Schmidt of the spatial unit vectors e_1..e_d, so deterministic.
std::vector<Vector> tangent_basis(const VectorRef& base);

}  // namespace hyden
