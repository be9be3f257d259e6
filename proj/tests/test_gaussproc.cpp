#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hyden/gaussproc.hpp"
#include "support/oracles.hpp"

using namespace hyden;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ImageSeries constant_series(int k, double c) {
  ImageSeries s;
  for (int i = 0; i < k; ++i) s.frames.push_back(Matrix::Constant(3, 4, c));
  return s;
}

}  // namespace

TEST(MlEstimates, Examples) {
  const GaussImage c = ml_estimates(constant_series(5, 0.4));
  EXPECT_TRUE((c.mu.array() == 0.4).all());
  EXPECT_TRUE((c.sigma.array() == kSigmaFloor).all());

  ImageSeries two;
  two.frames = {Matrix::Zero(2, 2), Matrix::Ones(2, 2)};
  const GaussImage t = ml_estimates(two);
  EXPECT_TRUE((t.mu.array() == 0.5).all());
  EXPECT_TRUE((t.sigma.array().square() == 0.25).all());

  std::mt19937_64 rng(71);
  ImageSeries r, shifted;
  for (int k = 0; k < 6; ++k) {
    r.frames.push_back(oracle::random_matrix(3, 3, rng));
    shifted.frames.push_back(r.frames.back().array() + 2.5);
  }
  const GaussImage a = ml_estimates(r), b = ml_estimates(shifted);
  EXPECT_LT((b.mu.array() - a.mu.array() - 2.5).abs().maxCoeff(), 1e-14);
  EXPECT_LT((b.sigma - a.sigma).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MlEstimates, Errors) {
  EXPECT_THROW(ml_estimates(constant_series(1, 0.0)), std::invalid_argument);
  ImageSeries ragged;
  ragged.frames = {Matrix::Zero(2, 2), Matrix::Zero(2, 3)};
  EXPECT_THROW(ml_estimates(ragged), std::invalid_argument);
}

TEST(Isometry, PrintedMapsStepByStep) {
  // pi1(mu, sigma) = (1/sqrt2)(mu, sqrt2 sigma) = (mu/sqrt2, sigma).
  const Eigen::Vector2d y = gauss_to_halfplane(0.0, kInvSqrt2);
  EXPECT_EQ(y[0], 0.0);
  EXPECT_EQ(y[1], kInvSqrt2);
  EXPECT_NEAR(gauss_to_halfplane(2.0, 0.3)[0], std::sqrt(2.0), 1e-15);
  EXPECT_EQ(gauss_to_halfplane(2.0, 0.3)[1], 0.3);

  // The apex is reached from (mu, sigma) = (0, 1): pi1 -> (0, 1), pi2 -> (0, 0).
  const Eigen::Vector2d p = gauss_to_halfplane(0.0, 1.0);
  EXPECT_EQ(p, Eigen::Vector2d(0.0, 1.0));
  const Eigen::Vector2d w = halfplane_to_disc(p);
  EXPECT_EQ(w, Eigen::Vector2d(0.0, 0.0));
  Vector apex(3);
  apex << 0, 0, 1;
  EXPECT_EQ(disc_to_sheet(w), apex);
  EXPECT_EQ(to_hyperbolic(0.0, 1.0), apex);

  // pi2(1, 1) = (2, 1) / 5, pi3 of that = (4, 2, 6) / 4.
  const Eigen::Vector2d w2 = halfplane_to_disc(Eigen::Vector2d(1.0, 1.0));
  EXPECT_NEAR(w2[0], 0.4, 1e-16);
  EXPECT_NEAR(w2[1], 0.2, 1e-16);
  const Vector x2 = disc_to_sheet(w2);
  EXPECT_NEAR(x2[0], 1.0, 1e-15);
  EXPECT_NEAR(x2[1], 0.5, 1e-15);
  EXPECT_NEAR(x2[2], 1.5, 1e-15);
}

TEST(Isometry, InverseMapsUndoForwardMaps) {
  std::mt19937_64 rng(75);
  std::uniform_real_distribution<double> ua(-4, 4), ub(0.02, 6);
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Vector2d y(ua(rng), ub(rng));
    EXPECT_LT((disc_to_halfplane(halfplane_to_disc(y)) - y).norm(), 1e-12 * (1 + y.squaredNorm()));
    const Eigen::Vector2d w = halfplane_to_disc(y);
    EXPECT_LT((sheet_to_disc(disc_to_sheet(w)) - w).norm(), 1e-12);
    const GaussParams g = halfplane_to_gauss(y);
    EXPECT_LT((gauss_to_halfplane(g.mu, g.sigma) - y).norm(), 1e-15 * (1 + y.norm()));
  }
}

TEST(Isometry, PrintedChainAgainstDirectForm) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double mu = -3.0 + 0.3 * i, sigma = 0.05 + 0.2 * j;
      const Vector chain = disc_to_sheet(halfplane_to_disc(gauss_to_halfplane(mu, sigma)));
      const Vector direct = to_hyperbolic(mu, sigma);
      EXPECT_LT((chain - direct).cwiseAbs().maxCoeff(), 1e-12 * direct[2] * direct[2]);
    }
  }
}

TEST(Isometry, MembershipAndRanges) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> umu(-3, 3), usig(0.01, 5);
  for (int k = 0; k < 2000; ++k) {
    const double mu = umu(rng), sigma = usig(rng);
    const Vector x = to_hyperbolic(mu, sigma);
    EXPECT_NEAR(minkowski(x, x), -1.0, 1e-12 * x[2]);
    EXPECT_GT(gauss_to_halfplane(mu, sigma)[1], 0.0);
    EXPECT_LT(halfplane_to_disc(gauss_to_halfplane(mu, sigma)).norm(), 1.0);
  }
  EXPECT_THROW(to_hyperbolic(0.0, 0.0), DomainError);
  EXPECT_THROW(to_hyperbolic(0.0, -1.0), DomainError);
}

TEST(Isometry, FromHyperbolicRoundTrips) {
  Vector apex(3);
  apex << 0, 0, 1;
  const GaussParams a = from_hyperbolic(apex);
  EXPECT_NEAR(a.mu, 0.0, 1e-16);
  EXPECT_NEAR(a.sigma, 1.0, 1e-16);

  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    for (int j = 0; j <= 60; ++j) {
      const double mu = -3.0 + 0.1 * i, sigma = 0.01 + (5.0 - 0.01) * j / 60.0;
      const GaussParams p = from_hyperbolic(to_hyperbolic(mu, sigma));
      worst = std::max({worst, std::abs(p.mu - mu), std::abs(p.sigma - sigma)});
    }
  }
  EXPECT_LE(worst, 1e-12);

  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> ur(0.0, std::acosh(1e6) - 1e-3), us(0.0, 6.283);
  for (int k = 0; k < 2000; ++k) {
    const Vector x = param_h2(ur(rng), us(rng));
    const GaussParams p = from_hyperbolic(x);
    const Vector back = to_hyperbolic(p.mu, p.sigma);
    EXPECT_LE((back - x).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, x[2])) << x.transpose();
  }

  Vector off(3);
  off << 0, 0, 2;
  EXPECT_THROW(from_hyperbolic(off), DomainError);
}

TEST(Isometry, MonotoneInSigmaAndSymmetricDistance) {
  for (double mu : {-1.0, 0.0, 2.0}) {
    for (double s = 0.1; s < 3.0; s += 0.1) {
      const Vector a = to_hyperbolic(mu, s), b = to_hyperbolic(mu, s + 0.05);
      EXPECT_GT(hyp_distance(a, b), 0.0);
      EXPECT_NEAR(hyp_distance(a, b), hyp_distance(b, a), 1e-13);
    }
  }
}

TEST(SeriesPipeline, ShapesMembershipAndInverse) {
  const H2Image c = series_to_h2_image(constant_series(3, 0.2));
  EXPECT_EQ(c.rows, 3);
  EXPECT_EQ(c.cols, 4);
  const Vector expect = to_hyperbolic(0.2, kSigmaFloor);
  for (Eigen::Index n = 0; n < 12; ++n) {
    EXPECT_TRUE(Vector(c.points.col(n)).isApprox(expect, 1e-14)) << c.points.col(n).transpose();
  }

  std::mt19937_64 rng(74);
  ImageSeries s;
  for (int k = 0; k < 8; ++k) s.frames.push_back(0.5 + 0.2 * oracle::random_matrix(5, 7, rng).array());
  const H2Image img = series_to_h2_image(s);
  for (Eigen::Index n = 0; n < img.points.cols(); ++n) {
    const auto x = img.points.col(n);
    EXPECT_NEAR(minkowski(x, x), -1.0, 1e-12 * x[2]);
  }
  const GaussImage ml = ml_estimates(s);
  const GaussImage back = h2_image_to_gauss(img, false);
  EXPECT_LT((back.mu - ml.mu).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((back.sigma - ml.sigma).cwiseAbs().maxCoeff(), 1e-10);

  // A radial perturbation is removed by snapping.
  H2Image pert = img;
  pert.points *= 1.0 + 1e-6;
  const GaussImage snapped = h2_image_to_gauss(pert, true);
  EXPECT_LT((snapped.mu - ml.mu).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((snapped.sigma - ml.sigma).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(h2_image_to_gauss(pert, false), DomainError);
}

TEST(SeriesPipeline, ApexImageAndSpacelikePixel) {
  H2Image img{2, 2, Matrix::Zero(3, 4)};
  img.points.row(2).setOnes();
  const GaussImage g = h2_image_to_gauss(img, false);
  EXPECT_LT(g.mu.cwiseAbs().maxCoeff(), 1e-16);
  EXPECT_LT((g.sigma.array() - 1.0).abs().maxCoeff(), 1e-15);

  img.points.col(1) << 2.0, 0.0, 1.0;
  EXPECT_THROW(h2_image_to_gauss(img, true), DomainError);
}

TEST(Isometry, InverseAgreesWithChainOfInverseMaps) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double mu = -2.0 + 0.2 * i, sigma = 0.2 + 0.1 * j;
      const Vector x = to_hyperbolic(mu, sigma);
      const GaussParams chain = halfplane_to_gauss(disc_to_halfplane(sheet_to_disc(x)));
      const GaussParams direct = from_hyperbolic(x);
      EXPECT_NEAR(direct.mu, chain.mu, 1e-12);
      EXPECT_NEAR(direct.sigma, chain.sigma, 1e-12);
    }
  }
}
