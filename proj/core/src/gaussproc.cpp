#include "hyden/gaussproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyden {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

}  // namespace

GaussImage ml_estimates(const ImageSeries& s) {
  if (s.size() < 2) throw std::invalid_argument("ml_estimates: need at least 2 frames");
  const Eigen::Index rows = s.rows();
  const Eigen::Index cols = s.cols();
  for (const auto& f : s.frames) {
    if (f.rows() != rows || f.cols() != cols) {
      throw std::invalid_argument("ml_estimates: frames differ in shape");
    }
  }
  const double K = static_cast<double>(s.size());
  Matrix mu = Matrix::Zero(rows, cols);
  for (const auto& f : s.frames) mu += f;
  mu /= K;
  Matrix var = Matrix::Zero(rows, cols);
  for (const auto& f : s.frames) var += (f - mu).array().square().matrix();
  var /= K;
  return {std::move(mu), var.array().sqrt().max(kSigmaFloor).matrix()};
}

Eigen::Vector2d gauss_to_halfplane(double mu, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gauss_to_halfplane: sigma must be positive");
  return {mu / kSqrt2, sigma};
}

Eigen::Vector2d halfplane_to_disc(const Eigen::Vector2d& y) {
  const double denom = y[0] * y[0] + (y[1] + 1.0) * (y[1] + 1.0);
  return Eigen::Vector2d(2.0 * y[0], y.squaredNorm() - 1.0) / denom;
}

HPoint disc_to_sheet(const Eigen::Vector2d& y) {
  const double r2 = y.squaredNorm();
  if (r2 >= 1.0) throw DomainError("disc_to_sheet: point outside the open unit disc");
  HPoint x(3);
  x << 2.0 * y[0], 2.0 * y[1], 1.0 + r2;
  return x / (1.0 - r2);
}

Eigen::Vector2d sheet_to_disc(const VectorRef& x) {
  if (x.size() != 3) throw std::invalid_argument("sheet_to_disc: expected a point of H_2");
  return Eigen::Vector2d(x[0], x[1]) / (1.0 + x[2]);
}

// Inverse of w = i (z - i) / (z + i) with z = y_1 + i y_2, w = w_1 + i w_2:
// z = (2 w_1 + i (1 - |w|^2)) / (w_1^2 + (1 - w_2)^2).
Eigen::Vector2d disc_to_halfplane(const Eigen::Vector2d& w) {
  const double denom = w[0] * w[0] + (1.0 - w[1]) * (1.0 - w[1]);
  return Eigen::Vector2d(2.0 * w[0], 1.0 - w.squaredNorm()) / denom;
}

GaussParams halfplane_to_gauss(const Eigen::Vector2d& y) {
  return {kSqrt2 * y[0], y[1]};
}

HPoint to_hyperbolic(double mu, double sigma) {
  const Eigen::Vector2d y = gauss_to_halfplane(mu, sigma);
  // pi3(pi2(y)) for y = (a, b) simplifies to (a, (a^2 + b^2 - 1) / 2, (1 + a^2 + b^2) / 2) / b.
  const double a = y[0];
  const double b = y[1];
  const double r2 = a * a + b * b;
  HPoint x(3);
  x << a / b, (r2 - 1.0) / (2.0 * b), (1.0 + r2) / (2.0 * b);
  return x;
}

GaussParams from_hyperbolic(const VectorRef& x) {
  if (x.size() != 3) throw std::invalid_argument("from_hyperbolic: expected a point of H_2");
  const double scale = std::max(1.0, x[2] * x[2]);
  if (x[2] <= 0.0 || std::abs(minkowski(x, x) + 1.0) > kSheetTolerance * scale) {
    throw DomainError("from_hyperbolic: point is not on the sheet");
  }
  // Same value as halfplane_to_gauss(disc_to_halfplane(sheet_to_disc(x))). On the
  // sheet x3 - x2 = 1 / y2 = (1 + x1^2) / (x3 + x2); pick the form without cancellation.
  const double t = x[1] >= 0.0 ? (1.0 + x[0] * x[0]) / (x[2] + x[1]) : x[2] - x[1];
  return halfplane_to_gauss(Eigen::Vector2d(x[0] / t, 1.0 / t));
}

H2Image gauss_to_h2_image(const GaussImage& g) {
  H2Image img{g.mu.rows(), g.mu.cols(), Matrix(3, g.mu.size())};
  for (Eigen::Index i = 0; i < img.rows; ++i) {
    for (Eigen::Index j = 0; j < img.cols; ++j) {
      img.points.col(i * img.cols + j) = to_hyperbolic(g.mu(i, j), g.sigma(i, j));
    }
  }
  return img;
}

H2Image series_to_h2_image(const ImageSeries& s) { return gauss_to_h2_image(ml_estimates(s)); }

GaussImage h2_image_to_gauss(const H2Image& img, bool snap) {
  GaussImage g{Matrix(img.rows, img.cols), Matrix(img.rows, img.cols)};
  for (Eigen::Index i = 0; i < img.rows; ++i) {
    for (Eigen::Index j = 0; j < img.cols; ++j) {
      const auto p = img.points.col(i * img.cols + j);
      if (minkowski(p, p) >= 0.0) {
        throw DomainError("h2_image_to_gauss: pixel is not timelike");
      }
      const GaussParams gp = snap ? from_hyperbolic(snap_to_sheet(p)) : from_hyperbolic(p);
      g.mu(i, j) = gp.mu;
      g.sigma(i, j) = gp.sigma;
    }
  }
  return g;
}

}  // namespace hyden
