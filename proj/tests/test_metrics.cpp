#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hyden/metrics.hpp"
#include "support/oracles.hpp"

using namespace hyden;

TEST(MaeEta, Examples) {
  Matrix on(3, 4);
  for (int n = 0; n < 4; ++n) on.col(n) = param_h2(0.3 * n, n);
  EXPECT_LT(mae_eta(on), 1e-15);
  Matrix p(2, 1);
  p << 0, 2;
  EXPECT_EQ(mae_eta(p), 3.0);
}

TEST(MaeEta, FirstOrderScaling) {
  std::mt19937_64 rng(61);
  Matrix pts(3, 20);
  for (int n = 0; n < 20; ++n) pts.col(n) = oracle::random_sheet_point(2, rng);
  const double eps = 1e-6;
  // -eta(x, x) = 1 on the sheet, so the first-order change is 2 eps.
  EXPECT_NEAR(mae_eta((1 + eps) * pts), 2 * eps, 1e-10);
}

TEST(MaeEta, PermutationAndTildeInvariance) {
  std::mt19937_64 rng(62);
  const Matrix pts = oracle::random_matrix(3, 15, rng);
  Matrix perm = pts;
  perm.col(0) = pts.col(7);
  perm.col(7) = pts.col(0);
  EXPECT_DOUBLE_EQ(mae_eta(perm), mae_eta(pts));
  Matrix tl = pts;
  tl.row(2) *= -1;
  EXPECT_EQ(mae_eta(tl), mae_eta(pts));
}

TEST(Snr, Definition) {
  std::mt19937_64 rng(63);
  const Matrix ref = oracle::random_matrix(5, 6, rng);
  EXPECT_EQ(snr(ref, ref), kSnrCapDb);
  EXPECT_NEAR(snr(ref, Matrix::Zero(5, 6)), 0.0, 1e-12);
  Matrix e = oracle::random_matrix(5, 6, rng);
  e *= std::sqrt(ref.squaredNorm() / 10.0) / e.norm();
  EXPECT_NEAR(snr(ref, ref + e), 10.0, 1e-10);
  EXPECT_THROW(snr(Matrix::Zero(2, 2), Matrix::Ones(2, 2)), std::invalid_argument);
  EXPECT_THROW(snr(ref, Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST(Snr, DecreasesWithNoiseAmplitude) {
  std::mt19937_64 rng(64);
  const Matrix ref = Matrix::Constant(16, 16, 0.5) + 0.1 * oracle::random_matrix(16, 16, rng);
  for (int seed = 0; seed < 5; ++seed) {
    std::mt19937_64 r(static_cast<unsigned>(seed));
    const Matrix noise = oracle::random_matrix(16, 16, r);
    double prev = kSnrCapDb + 1;
    for (double a : {0.01, 0.05, 0.1, 0.5}) {
      const double s = snr(ref, ref + a * noise);
      EXPECT_LT(s, prev);
      prev = s;
    }
  }
}

TEST(MeanHypError, Examples) {
  Matrix x(2, 1), r(2, 1);
  x.col(0) = param_h1(0.0);
  r.col(0) = param_h1(-1.3);
  EXPECT_NEAR(mean_hyp_error(x, r), 1.3, 1e-14);
  EXPECT_EQ(mean_hyp_error(r, r), 0.0);

  Matrix a(2, 3), b(2, 3);
  for (int n = 0; n < 3; ++n) {
    a.col(n) = param_h1(n);
    b.col(n) = param_h1(n + 0.5);
  }
  Matrix shuffled = b;
  shuffled.col(0) = b.col(2);
  shuffled.col(2) = b.col(0);
  EXPECT_NE(mean_hyp_error(a, b), mean_hyp_error(a, shuffled));

  Matrix off(2, 1);
  off << 0, 3;
  EXPECT_THROW(mean_hyp_error(off, r), DomainError);
}

TEST(ReadoutOnSheet, SnapAndLiftFallback) {
  Matrix p(3, 2);
  p << 0.2, 3.0,  //
      0.1, 0.0,   //
      2.0, 1.0;   // second column is spacelike
  const Matrix s = readout_on_sheet(p);
  for (int n = 0; n < 2; ++n) EXPECT_NEAR(minkowski(s.col(n), s.col(n)), -1.0, 1e-13);
  EXPECT_TRUE(s.col(0).isApprox(snap_to_sheet(p.col(0))));
  EXPECT_TRUE(s.col(1).isApprox(lift_to_sheet(p.col(1))));
}
