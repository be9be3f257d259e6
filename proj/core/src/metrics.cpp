#include "hyden/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hyden {

double mae_eta(const Matrix& points) {
  if (points.cols() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    total += std::abs(minkowski(points.col(n), points.col(n)) + 1.0);
  }
  return total / static_cast<double>(points.cols());
}

double snr(const Matrix& reference, const Matrix& estimate) {
  if (reference.rows() != estimate.rows() || reference.cols() != estimate.cols()) {
    throw std::invalid_argument("snr: shape mismatch");
  }
  const double signal = reference.squaredNorm();
  if (signal == 0.0) throw std::invalid_argument("snr: reference is identically zero");
  const double noise = (reference - estimate).squaredNorm();
  if (noise == 0.0) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(signal / noise));
}

double mean_hyp_error(const Matrix& x, const Matrix& x_ref) {
  if (x.rows() != x_ref.rows() || x.cols() != x_ref.cols()) {
    throw std::invalid_argument("mean_hyp_error: shape mismatch");
  }
  if (x.cols() == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index n = 0; n < x.cols(); ++n) {
    if (!on_sheet(x.col(n)) || !on_sheet(x_ref.col(n))) {
      throw DomainError("mean_hyp_error: column " + std::to_string(n) + " is off the sheet");
    }
    total += hyp_distance(x.col(n), x_ref.col(n));
  }
  return total / static_cast<double>(x.cols());
}

Matrix readout_on_sheet(const Matrix& points) {
  Matrix out(points.rows(), points.cols());
  const Eigen::Index d = points.rows() - 1;
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    const auto p = points.col(n);
    if (p[d] > 0.0 && minkowski(p, p) < 0.0) {
      out.col(n) = snap_to_sheet(p);
    } else {
      out.col(n) = lift_to_sheet(p);
    }
  }
  return out;
}

}  // namespace hyden
