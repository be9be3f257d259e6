#include "hyden/tvprox.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hyden {

void tv1d_prox(std::span<const double> y, double w, std::span<double> out) {
  if (out.size() != y.size()) throw std::invalid_argument("tv1d_prox: size mismatch");
  if (!(w > 0.0)) throw std::invalid_argument("tv1d_prox: weight must be positive");
  const auto width = static_cast<std::ptrdiff_t>(y.size());
  if (width == 0) return;

  // k: current sample, k0: start of the current segment, kplus/kminus: last
  // positions where the dual variable touched -w / +w. [vmin, vmax] is the
  // admissible value range for the current segment; umin/umax the matching
  // dual values.
  std::ptrdiff_t k = 0, k0 = 0, kplus = 0, kminus = 0;
  double umin = w, umax = -w;
  double vmin = y[0] - w, vmax = y[0] + w;
  const double two_w = 2.0 * w;

  for (;;) {
    while (k == width - 1) {
      if (umin < 0.0) {
        // vmin too high: negative jump.
        do out[k0++] = vmin; while (k0 <= kminus);
        k = kminus = k0;
        vmin = y[k];
        umin = w;
        umax = vmin + umin - vmax;
      } else if (umax > 0.0) {
        // vmax too low: positive jump.
        do out[k0++] = vmax; while (k0 <= kplus);
        k = kplus = k0;
        vmax = y[k];
        umax = -w;
        umin = vmax + umax - vmin;
      } else {
        vmin += umin / static_cast<double>(k - k0 + 1);
        do out[k0++] = vmin; while (k0 <= k);
        return;
      }
    }
    umin += y[k + 1] - vmin;
    if (umin < -w) {
      do out[k0++] = vmin; while (k0 <= kminus);
      k = kplus = kminus = k0;
      vmin = y[k];
      vmax = vmin + two_w;
      umin = w;
      umax = -w;
      continue;
    }
    umax += y[k + 1] - vmax;
    if (umax > w) {
      do out[k0++] = vmax; while (k0 <= kplus);
      k = kplus = kminus = k0;
      vmax = y[k];
      vmin = vmax - two_w;
      umin = w;
      umax = -w;
      continue;
    }
    ++k;
    if (umin >= w) {
      kminus = k;
      vmin += (umin - w) / static_cast<double>(kminus - k0 + 1);
      umin = w;
    }
    if (umax <= -w) {
      kplus = k;
      vmax += (umax + w) / static_cast<double>(kplus - k0 + 1);
      umax = -w;
    }
  }
}

std::vector<double> tv1d_prox(std::span<const double> y, double w) {
  std::vector<double> out(y.size());
  tv1d_prox(y, w, out);
  return out;
}

namespace {

double row_tv(const Matrix& x) {
  return (x.rightCols(x.cols() - 1) - x.leftCols(x.cols() - 1)).cwiseAbs().sum();
}

double col_tv(const Matrix& x) {
  return (x.bottomRows(x.rows() - 1) - x.topRows(x.rows() - 1)).cwiseAbs().sum();
}

// out = prox of w * TV applied to every row of `in`.
void prox_rows(const Matrix& in, double w, Matrix& out, std::vector<double>& a,
               std::vector<double>& b) {
  const auto cols = static_cast<std::size_t>(in.cols());
  a.resize(cols);
  b.resize(cols);
  for (Eigen::Index i = 0; i < in.rows(); ++i) {
    for (Eigen::Index j = 0; j < in.cols(); ++j) a[static_cast<std::size_t>(j)] = in(i, j);
    tv1d_prox(a, w, b);
    for (Eigen::Index j = 0; j < in.cols(); ++j) out(i, j) = b[static_cast<std::size_t>(j)];
  }
}

// Columns are contiguous in column-major storage.
void prox_cols(const Matrix& in, double w, Matrix& out) {
  const auto rows = static_cast<std::size_t>(in.rows());
  for (Eigen::Index j = 0; j < in.cols(); ++j) {
    tv1d_prox(std::span<const double>(in.col(j).data(), rows), w,
              std::span<double>(out.col(j).data(), rows));
  }
}

}  // namespace

double tv2d_objective(const Matrix& x, const Matrix& y, double w) {
  return 0.5 * (x - y).squaredNorm() + w * (row_tv(x) + col_tv(x));
}

Matrix tv2d_prox(const Matrix& y, double w, const Tv2dOptions& opts, Tv2dWarmStart* warm,
                 Tv2dStats* stats) {
  if (!(w > 0.0)) throw std::invalid_argument("tv2d_prox: weight must be positive");
  if (y.size() == 0) return y;

  if (y.rows() == 1 || y.cols() == 1) {
    Matrix out(y.rows(), y.cols());
    tv1d_prox(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())), w,
              std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
    if (stats) {
      stats->iterations = 1;
      stats->objective_trace.assign(1, tv2d_objective(out, y, w));
    }
    return out;
  }

  // Split 1/2|x-y|^2 evenly between h1 = 1/4|x-y|^2 + w TV_rows and
  // h2 = 1/4|x-y|^2 + w TV_cols; with unit step their resolvents are
  // prox_{(2w/3) TV}((y + 2z) / 3) along rows and columns respectively.
  const double w_half = 2.0 * w / 3.0;
  Matrix s = (warm && warm->state.rows() == y.rows() && warm->state.cols() == y.cols())
                 ? warm->state
                 : y;
  Matrix a(y.rows(), y.cols()), b(y.rows(), y.cols()), prev(y.rows(), y.cols());
  Matrix arg(y.rows(), y.cols());
  Matrix best = y;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> buf_in, buf_out;

  if (stats) {
    stats->iterations = 0;
    stats->objective_trace.clear();
  }
  const int iters = std::max(1, opts.max_iters);
  for (int it = 0; it < iters; ++it) {
    arg = (y + 2.0 * s) / 3.0;
    prox_rows(arg, w_half, a, buf_in, buf_out);
    arg = (y + 2.0 * (2.0 * a - s)) / 3.0;
    prox_cols(arg, w_half, b);
    s += b - a;

    const double obj = tv2d_objective(a, y, w);
    if (obj <= best_obj) {
      best_obj = obj;
      best = a;
    }
    if (stats) {
      stats->iterations = it + 1;
      stats->objective_trace.push_back(best_obj);
    }
    if (it > 0 && (a - prev).cwiseAbs().maxCoeff() < opts.tolerance) break;
    prev = a;
  }
  if (warm) warm->state = std::move(s);
  return best;
}

double tv_value(const Graph& g, const Matrix& x) {
  if (x.cols() != static_cast<Eigen::Index>(g.num_vertices())) {
    throw std::invalid_argument("tv_value: size mismatch");
  }
  double total = 0.0;
  for (const auto& e : g.edges()) {
    total += (x.col(static_cast<Eigen::Index>(e.n)) - x.col(static_cast<Eigen::Index>(e.m)))
                 .cwiseAbs()
                 .sum();
  }
  return total;
}

Matrix tv_prox_graph(const Graph& g, const Matrix& y, double w, const Tv2dOptions& opts,
                     std::vector<Tv2dWarmStart>* warm) {
  if (y.cols() != static_cast<Eigen::Index>(g.num_vertices())) {
    throw std::invalid_argument("tv_prox_graph: size mismatch");
  }
  Matrix out(y.rows(), y.cols());
  const auto n = static_cast<std::size_t>(y.cols());

  switch (g.kind()) {
    case GraphKind::line: {
      std::vector<double> in(n), res(n);
      for (Eigen::Index c = 0; c < y.rows(); ++c) {
        for (std::size_t k = 0; k < n; ++k) in[k] = y(c, static_cast<Eigen::Index>(k));
        tv1d_prox(in, w, res);
        for (std::size_t k = 0; k < n; ++k) out(c, static_cast<Eigen::Index>(k)) = res[k];
      }
      return out;
    }
    case GraphKind::grid: {
      const auto rows = static_cast<Eigen::Index>(g.rows());
      const auto cols = static_cast<Eigen::Index>(g.cols());
      if (warm && warm->size() != static_cast<std::size_t>(y.rows())) {
        warm->assign(static_cast<std::size_t>(y.rows()), {});
      }
      Matrix field(rows, cols);
      for (Eigen::Index c = 0; c < y.rows(); ++c) {
        for (Eigen::Index i = 0; i < rows; ++i)
          for (Eigen::Index j = 0; j < cols; ++j) field(i, j) = y(c, i * cols + j);
        const Matrix res =
            tv2d_prox(field, w, opts, warm ? &(*warm)[static_cast<std::size_t>(c)] : nullptr);
        for (Eigen::Index i = 0; i < rows; ++i)
          for (Eigen::Index j = 0; j < cols; ++j) out(c, i * cols + j) = res(i, j);
      }
      return out;
    }
    case GraphKind::general:
      break;
  }
  throw std::invalid_argument("tv_prox_graph: only line and grid graphs are supported");
}

}  // namespace hyden
