// Gaussian image processing: pixelwise (mu, sigma) estimates and their
// identification with H_2 through the Fisher-metric isometry
//
//   N --pi1--> upper half-plane P_2 --pi2--> Poincare disc D_2 --pi3--> H_2.
#pragma once

#include <cstddef>
#include <vector>

#include "hyden/geometry.hpp"

namespace hyden {

/// Lower bound applied to estimated standard deviations.
inline constexpr double kSigmaFloor = 1e-6;

/// K aligned rows x cols frames.
struct ImageSeries {
  std::vector<Matrix> frames;

  std::size_t size() const { return frames.size(); }
  Eigen::Index rows() const { return frames.empty() ? 0 : frames.front().rows(); }
  Eigen::Index cols() const { return frames.empty() ? 0 : frames.front().cols(); }
};

struct GaussImage {
  Matrix mu;
  Matrix sigma;
};

struct GaussParams {
  double mu = 0.0;
  double sigma = 1.0;
};

/// H_2-valued image; pixel (i, j) is column i * cols + j of `points` (3 x N).
struct H2Image {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Matrix points;
};

/// Pixelwise maximum-likelihood mean and (biased, 1/K) standard deviation.
/// sigma is floored at kSigmaFloor. Throws for K < 2 or ragged frames.
GaussImage ml_estimates(const ImageSeries& s);

// The individual maps of the isometry chain and their inverses.
Eigen::Vector2d gauss_to_halfplane(double mu, double sigma);   // pi1
Eigen::Vector2d halfplane_to_disc(const Eigen::Vector2d& y);   // pi2
HPoint disc_to_sheet(const Eigen::Vector2d& y);                // pi3
Eigen::Vector2d sheet_to_disc(const VectorRef& x);             // pi3^-1
Eigen::Vector2d disc_to_halfplane(const Eigen::Vector2d& w);   // pi2^-1
GaussParams halfplane_to_gauss(const Eigen::Vector2d& y);      // pi1^-1

/// pi3(pi2(pi1(mu, sigma))), evaluated through the algebraically equal
/// half-plane-to-hyperboloid formula so that points stay on the sheet to
/// working precision even for tiny sigma. Throws DomainError for sigma <= 0.
HPoint to_hyperbolic(double mu, double sigma);

/// Inverse of to_hyperbolic, again through a cancellation-free closed form.
/// Throws DomainError for off-sheet input.
GaussParams from_hyperbolic(const VectorRef& x);

H2Image series_to_h2_image(const ImageSeries& s);
H2Image gauss_to_h2_image(const GaussImage& g);

/// Pixelwise from_hyperbolic; with `snap`, every pixel is first renormalized
/// onto the sheet. Throws DomainError for pixels with eta(x, x) >= 0.
GaussImage h2_image_to_gauss(const H2Image& img, bool snap);

}  // namespace hyden
