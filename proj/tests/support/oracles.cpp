#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Vector random_sheet_point(Eigen::Index d, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector x(d + 1);
  double s2 = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    x[i] = normal(rng);
    s2 += x[i] * x[i];
  }
  x[d] = std::sqrt(1.0 + s2);
  return x;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

void fill_symmetric(hyden::MatrixSeq& seq, std::mt19937_64& rng) {
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Matrix a = random_matrix(seq.dim(), seq.dim(), rng);
    seq[k] = 0.5 * (a + a.transpose());
  }
}

// Dual of the prox: min_z 1/2 |y - D^T z|^2 s.t. |z|_inf <= w, with (Dx)_k =
// x_{k+1} - x_k. The primal solution is x = y - D^T z. |D D^T| <= 4.
std::vector<double> tv1d_dual_projected_gradient(const std::vector<double>& y, double w,
                                                double tol, int max_iter) {
  const std::size_t n = y.size();
  if (n < 2) return y;
  std::vector<double> z(n - 1, 0.0), x(n);
  auto primal = [&] {
    for (std::size_t k = 0; k < n; ++k) {
      double dt = 0.0;  // (D^T z)_k = z_{k-1} - z_k
      if (k > 0) dt += z[k - 1];
      if (k + 1 < n) dt -= z[k];
      x[k] = y[k] - dt;
    }
  };
  // D D^T is positive definite, so plain projected gradient converges linearly
  // and a small step is a reliable stopping signal.
  for (int it = 0; it < max_iter; ++it) {
    primal();
    double move = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double znew = std::clamp(z[k] + 0.25 * (x[k + 1] - x[k]), -w, w);
      move = std::max(move, std::abs(znew - z[k]));
      z[k] = znew;
    }
    if (move < tol) break;
  }
  primal();
  return x;
}

Matrix tv2d_dual_fista(const Matrix& y, double w, double tol, int max_iter) {
  const Eigen::Index R = y.rows(), C = y.cols();
  // Dual variables: horizontal differences (R x C-1) and vertical (R-1 x C).
  Matrix h = Matrix::Zero(R, std::max<Eigen::Index>(C - 1, 0));
  Matrix v = Matrix::Zero(std::max<Eigen::Index>(R - 1, 0), C);
  Matrix hp = h, vp = v, hq = h, vq = v;
  auto primal = [&](const Matrix& hh, const Matrix& vv) {
    Matrix x = y;
    for (Eigen::Index i = 0; i < R; ++i) {
      for (Eigen::Index j = 0; j + 1 < C; ++j) {
        x(i, j) += hh(i, j);
        x(i, j + 1) -= hh(i, j);
      }
    }
    for (Eigen::Index i = 0; i + 1 < R; ++i) {
      for (Eigen::Index j = 0; j < C; ++j) {
        x(i, j) += vv(i, j);
        x(i + 1, j) -= vv(i, j);
      }
    }
    return x;
  };
  double t = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const Matrix x = primal(hq, vq);
    double move = 0.0;
    for (Eigen::Index i = 0; i < R; ++i) {
      for (Eigen::Index j = 0; j + 1 < C; ++j) {
        const double nv = std::clamp(hq(i, j) + 0.125 * (x(i, j + 1) - x(i, j)), -w, w);
        move = std::max(move, std::abs(nv - h(i, j)));
        hp(i, j) = h(i, j);
        h(i, j) = nv;
      }
    }
    for (Eigen::Index i = 0; i + 1 < R; ++i) {
      for (Eigen::Index j = 0; j < C; ++j) {
        const double nv = std::clamp(vq(i, j) + 0.125 * (x(i + 1, j) - x(i, j)), -w, w);
        move = std::max(move, std::abs(nv - v(i, j)));
        vp(i, j) = v(i, j);
        v(i, j) = nv;
      }
    }
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    hq = h + (t - 1.0) / tn * (h - hp);
    vq = v + (t - 1.0) / tn * (v - vp);
    t = tn;
    if (move < tol && it > 10) break;
  }
  return primal(h, v);
}

double tv1d_objective(const std::vector<double>& x, const std::vector<double>& y, double w) {
  double obj = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) obj += 0.5 * (x[k] - y[k]) * (x[k] - y[k]);
  for (std::size_t k = 0; k + 1 < x.size(); ++k) obj += w * std::abs(x[k + 1] - x[k]);
  return obj;
}

std::pair<double, double> two_point_grid_search(double a, double b, double w) {
  auto f = [&](double p, double q) {
    return 0.5 * (p - a) * (p - a) + 0.5 * (q - b) * (q - b) + w * std::abs(p - q);
  };
  double lo = std::min(a, b) - 1.0, hi = std::max(a, b) + 1.0;
  double bp = a, bq = b, best = f(a, b);
  double plo = lo, phi = hi, qlo = lo, qhi = hi;
  for (int round = 0; round < 6; ++round) {
    const int n = 200;
    const double sp = (phi - plo) / n, sq = (qhi - qlo) / n;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const double p = plo + i * sp, q = qlo + j * sq;
        const double v = f(p, q);
        if (v < best) {
          best = v;
          bp = p;
          bq = q;
        }
      }
    }
    plo = bp - 2 * sp;
    phi = bp + 2 * sp;
    qlo = bq - 2 * sq;
    qhi = bq + 2 * sq;
  }
  return {bp, bq};
}

Matrix schur_of_identity(const Matrix& m, Eigen::Index k) {
  const Eigen::Index r = m.rows() - k;
  const Matrix C = m.topRightCorner(k, r);
  return m.bottomRightCorner(r, r) - C.transpose() * C;
}

Vector jacobi_eigenvalues(Matrix a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vector ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

}  // namespace oracle
