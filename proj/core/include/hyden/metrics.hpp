// Quality and diagnostic metrics.
#pragma once

#include "hyden/geometry.hpp"

namespace hyden {

/// Mean of |eta(x_n, x_n) + 1| over the columns of `points`.
double mae_eta(const Matrix& points);

/// Returned by snr() when the estimate matches the reference exactly.
inline constexpr double kSnrCapDb = 300.0;

/// 10 log10(|ref|^2 / |ref - est|^2) in dB. Throws on shape mismatch or an
/// all-zero reference.
double snr(const Matrix& reference, const Matrix& estimate);

/// Mean hyperbolic distance between corresponding columns. Both inputs must
/// lie on the sheet (within kSheetTolerance); snap near-sheet data first.
double mean_hyp_error(const Matrix& x, const Matrix& x_ref);

/// Columnwise snap_to_sheet; columns that are not timelike with a positive
/// last coordinate fall back to lift_to_sheet.
Matrix readout_on_sheet(const Matrix& points);

struct MetricReport {
  double mae_eta = 0.0;
  double snr_mu = 0.0;
  double snr_sigma = 0.0;
  double mean_hyp_error = 0.0;
  double objective = 0.0;
};

}  // namespace hyden
