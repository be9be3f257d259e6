#include "hyden/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyden {

namespace {

void require_same_length(const VectorRef& a, const VectorRef& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("length mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double minkowski(const VectorRef& a, const VectorRef& b) {
  require_same_length(a, b);
  if (a.size() < 2) {
    throw std::invalid_argument("minkowski: vectors need length d+1 >= 2");
  }
  const Eigen::Index d = a.size() - 1;
  return a.head(d).dot(b.head(d)) - a[d] * b[d];
}

Vector tilde(const VectorRef& a) {
  Vector out = a;
  if (out.size() > 0) out[out.size() - 1] = -out[out.size() - 1];
  return out;
}

Vector proj_halfspace(const VectorRef& a) {
  Vector out = a;
  auto& last = out[out.size() - 1];
  last = std::max(last, 1.0);
  return out;
}

bool on_sheet(const VectorRef& a, double tol) {
  return a.size() >= 2 && a[a.size() - 1] >= 1.0 - tol &&
         std::abs(minkowski(a, a) + 1.0) <= tol;
}

double hyp_distance(const VectorRef& a, const VectorRef& b) {
  const double arg = -minkowski(a, b);
  if (arg >= 1.0) return std::acosh(arg);
  const Eigen::Index d = a.size() - 1;
  const double window = kAcoshClampWindow * std::max(1.0, std::abs(a[d] * b[d]));
  if (arg >= 1.0 - window) return 0.0;
  throw DomainError("hyp_distance: -eta(a,b) = " + std::to_string(arg) +
                    " < 1, points are not on the sheet");
}

HPoint snap_to_sheet(const VectorRef& a) {
  const double q = minkowski(a, a);
  if (q >= 0.0 || a[a.size() - 1] <= 0.0) {
    throw DomainError("snap_to_sheet: point is not timelike with positive last coordinate");
  }
  return a / std::sqrt(-q);
}

HPoint lift_to_sheet(const VectorRef& a) {
  const Eigen::Index d = a.size() - 1;
  HPoint out(a.size());
  out.head(d) = a.head(d);
  out[d] = std::sqrt(1.0 + a.head(d).squaredNorm());
  return out;
}

HPoint param_h1(double r) {
  HPoint x(2);
  x << std::sinh(r), std::cosh(r);
  return x;
}

HPoint param_h2(double r, double s) {
  HPoint x(3);
  const double sr = std::sinh(r);
  x << sr * std::cos(s), sr * std::sin(s), std::cosh(r);
  return x;
}

HPoint exp_map(const TangentVector& v) {
  require_same_length(v.base, v.dir);
  const double scale = 1.0 + v.base.norm() * v.dir.norm();
  if (std::abs(minkowski(v.base, v.dir)) > kSheetTolerance * scale) {
    throw DomainError("exp_map: direction is not tangent at the base point");
  }
  const double nrm = std::sqrt(std::max(0.0, minkowski(v.dir, v.dir)));
  if (nrm < kExpMapCutoff) return v.base;
  return std::cosh(nrm) * v.base + (std::sinh(nrm) / nrm) * v.dir;
}

std::vector<Vector> tangent_basis(const VectorRef& base) {
  const Eigen::Index d = base.size() - 1;
  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    // Projection onto the eta-orthogonal complement of base (eta(base,base) = -1).
    Vector t = Vector::Unit(base.size(), k);
    t += minkowski(t, base) * base;
    for (const auto& prev : basis) t -= minkowski(t, prev) * prev;
    t /= std::sqrt(minkowski(t, t));
    basis.push_back(std::move(t));
  }
  return basis;
}

}  // namespace hyden
