#include <gtest/gtest.h>

#include <random>

#include "hyden/noise.hpp"
#include "support/oracles.hpp"

using namespace hyden;

TEST(TangentialNoise, ZeroSigmaAndMembership) {
  std::mt19937_64 rng(51);
  const Vector x = oracle::random_sheet_point(2, rng);
  EXPECT_EQ(tangential_noise(x, 0.0, rng), x);
  EXPECT_THROW(tangential_noise(x, -1.0, rng), std::invalid_argument);
  for (Eigen::Index d = 1; d <= 3; ++d) {
    for (int k = 0; k < 1000; ++k) {
      const Vector base = oracle::random_sheet_point(d, rng);
      const Vector y = tangential_noise(base, 0.6, rng);
      ASSERT_NEAR(minkowski(y, y), -1.0, 1e-12 * std::max(1.0, y[d] * y[d]));
      ASSERT_GT(y[d], 0.0);
    }
  }
}

TEST(TangentialNoise, SquaredDistanceStatistic) {
  std::mt19937_64 rng(52);
  for (Eigen::Index d = 1; d <= 3; ++d) {
    const Vector x = oracle::random_sheet_point(d, rng);
    double acc = 0.0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k) {
      const double dist = hyp_distance(x, tangential_noise(x, 0.1, rng));
      acc += dist * dist;
    }
    EXPECT_NEAR(acc / draws, d * 0.01, 0.05 * d * 0.01);
  }
}

TEST(AmbientNoise, MomentStatistics) {
  std::mt19937_64 rng(53);
  Vector x(3);
  x << 0.4, -0.2, std::sqrt(1.2);
  EXPECT_EQ(ambient_noise(x, 0.0, rng), x);
  const int draws = 100000;
  const double sigma = 0.3;
  Vector mean = Vector::Zero(3);
  Matrix cov = Matrix::Zero(3, 3);
  std::vector<Vector> samples;
  samples.reserve(draws);
  for (int k = 0; k < draws; ++k) {
    samples.push_back(ambient_noise(x, sigma, rng));
    mean += samples.back();
  }
  mean /= draws;
  for (const auto& s : samples) cov += (s - mean) * (s - mean).transpose();
  cov /= draws - 1;
  const double se = sigma / std::sqrt(static_cast<double>(draws));
  for (int i = 0; i < 3; ++i) {
    EXPECT_LE(std::abs(mean[i] - x[i]), 3 * se);
    EXPECT_NEAR(cov(i, i), sigma * sigma, 0.05 * sigma * sigma);
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_LT(std::abs(cov(i, j)), 0.05 * sigma * sigma);
      }
    }
  }
}

TEST(AddNoise, DeterministicAndOrderIndependent) {
  Matrix pts(3, 50);
  for (int n = 0; n < 50; ++n) pts.col(n) = param_h2(0.02 * n, 0.1 * n);
  const NoiseSpec spec{NoiseKind::tangential, 0.4, 99};
  const Matrix a = add_noise(pts, spec);
  EXPECT_EQ(a, add_noise(pts, spec));

  // Column n only depends on (seed, n): a sub-block gives the same draws.
  const Matrix head = add_noise(pts.leftCols(10), spec);
  EXPECT_EQ(head, a.leftCols(10));

  NoiseSpec other = spec;
  other.seed = 100;
  EXPECT_NE(add_noise(pts, other), a);

  const Matrix b = add_noise(pts, {NoiseKind::ambient, 0.3, 99});
  EXPECT_EQ(b, add_noise(pts, {NoiseKind::ambient, 0.3, 99}));
}

TEST(StreamRng, StreamsDiffer) {
  auto a = stream_rng(1, 0), b = stream_rng(1, 1), c = stream_rng(1, 0);
  const auto va = a(), vb = b(), vc = c();
  EXPECT_NE(va, vb);
  EXPECT_EQ(va, vc);
}
