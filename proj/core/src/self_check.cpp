#include "hyden/self_check.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>

#include "hyden/gaussproc.hpp"
#include "hyden/geometry.hpp"
#include "hyden/graph.hpp"
#include "hyden/noise.hpp"
#include "hyden/relaxation.hpp"
#include "hyden/tvprox.hpp"

namespace hyden {

namespace {

std::string sci(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %.3e", label, v);
  return buf;
}

HPoint random_sheet_point(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector s = Vector::Zero(d + 1);
  for (Eigen::Index i = 0; i < d; ++i) s[i] = normal(rng);
  return lift_to_sheet(s);
}

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(r, c);
  for (Eigen::Index j = 0; j < c; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) m(i, j) = normal(rng);
  }
  return m;
}

void random_symmetric(MatrixSeq& U, std::mt19937_64& rng) {
  for (std::size_t k = 0; k < U.size(); ++k) {
    const Matrix a = random_matrix(U.dim(), U.dim(), rng);
    U[k] = a + a.transpose();
  }
}

CheckResult exp_map_membership(std::mt19937_64& rng) {
  double worst = 0.0;
  for (Eigen::Index d = 1; d <= 3; ++d) {
    for (int k = 0; k < 200; ++k) {
      const HPoint x = random_sheet_point(d, rng);
      const HPoint y = tangential_noise(x, 0.5, rng);
      worst = std::max(worst, std::abs(minkowski(y, y) + 1.0));
    }
  }
  return {"tangential noise stays on the sheet", worst <= 1e-12, sci("max |eta+1| =", worst)};
}

CheckResult certificate_rank(std::mt19937_64& rng) {
  int bad = 0;
  for (Eigen::Index d = 1; d <= 3; ++d) {
    for (int k = 0; k < 100; ++k) {
      const HPoint a = random_sheet_point(d, rng);
      const HPoint b = random_sheet_point(d, rng);
      const auto q = check_certificate(
          build_Q(a, b, a.squaredNorm(), b.squaredNorm(), a.dot(b), minkowski(a, b)),
          static_cast<int>(d + 1));
      const auto v = check_certificate(build_V(a, a.squaredNorm()), static_cast<int>(d + 1));
      if (!(q.is_psd && q.matches_rank && v.is_psd && v.matches_rank)) ++bad;
    }
  }
  return {"exact certificates are PSD with rank d+1", bad == 0,
          std::to_string(bad) + " of 300 failed"};
}

CheckResult adjoint_identity(std::mt19937_64& rng) {
  const Graph g = Graph::grid(3, 4);
  double worst = 0.0;
  for (Eigen::Index d = 1; d <= 3; ++d) {
    TikVars t = TikVars::zeros(d, g);
    t.x = random_matrix(d + 1, t.x.cols(), rng);
    t.ell = random_matrix(t.ell.size(), 1, rng);
    t.f = random_matrix(t.f.size(), 1, rng);
    t.v = random_matrix(t.v.size(), 1, rng);
    MatrixSeq U(g.num_edges(), d + 5);
    random_symmetric(U, rng);
    const double lhs = inner(op_Q(g, t), U);
    const double rhs = inner(t, adj_Q(g, U));
    worst = std::max(worst, std::abs(lhs - rhs) / (std::sqrt(inner(t, t)) * U.flat().norm()));

    TvVars s = TvVars::zeros(d, g);
    s.x = random_matrix(d + 1, s.x.cols(), rng);
    s.v = random_matrix(s.v.size(), 1, rng);
    MatrixSeq W(g.num_vertices(), d + 3);
    random_symmetric(W, rng);
    const double lv = inner(op_V(g, s), W);
    const double rv = inner(s, adj_V(g, W));
    worst = std::max(worst, std::abs(lv - rv) / (std::sqrt(inner(s, s)) * W.flat().norm()));
  }
  return {"adjoint identities", worst <= 1e-12, sci("max relative gap =", worst)};
}

CheckResult tv_two_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double a = unif(rng);
    const double b = unif(rng);
    const double w = 0.5 * std::abs(unif(rng)) + 1e-3;
    const auto x = tv1d_prox(std::vector<double>{a, b}, w);
    double ea, eb;
    if (std::abs(a - b) <= 2.0 * w) {
      ea = eb = 0.5 * (a + b);
    } else {
      const double s = a > b ? w : -w;
      ea = a - s;
      eb = b + s;
    }
    worst = std::max({worst, std::abs(x[0] - ea), std::abs(x[1] - eb)});
  }
  return {"two-point TV prox closed form", worst <= 1e-15, sci("max error =", worst)};
}

CheckResult isometry_round_trip() {
  double worst = 0.0;
  for (int i = 0; i <= 30; ++i) {
    for (int j = 0; j <= 30; ++j) {
      const double mu = -3.0 + 6.0 * i / 30.0;
      const double sigma = 0.01 + (5.0 - 0.01) * j / 30.0;
      const GaussParams p = from_hyperbolic(to_hyperbolic(mu, sigma));
      worst = std::max({worst, std::abs(p.mu - mu), std::abs(p.sigma - sigma)});
    }
  }
  return {"Gaussian isometry round trip", worst <= 1e-12, sci("max error =", worst)};
}

CheckResult psd_projection(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Matrix a = random_matrix(7, 7, rng);
    const SymMat p = proj_psd(a + a.transpose());
    const SymMat pp = proj_psd(p);
    const auto c = check_certificate(p, 0);
    worst = std::max(worst, (pp - p).norm() / std::max(1.0, p.norm()));
    if (!c.is_psd) worst = std::max(worst, 1.0);
  }
  return {"PSD projection is idempotent", worst <= 1e-12, sci("max relative change =", worst)};
}

}  // namespace

std::vector<CheckResult> run_self_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<std::function<CheckResult()>> checks{
      [&] { return exp_map_membership(rng); }, [&] { return certificate_rank(rng); },
      [&] { return adjoint_identity(rng); },   [&] { return tv_two_point(rng); },
      [] { return isometry_round_trip(); },    [&] { return psd_projection(rng); },
  };
  std::vector<CheckResult> out;
  for (const auto& c : checks) {
    try {
      out.push_back(c());
    } catch (const std::exception& e) {
      out.push_back({"(check threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace hyden
