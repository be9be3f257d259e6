// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyden/geometry.hpp"
#include "hyden/relaxation.hpp"

namespace oracle {

using hyden::Matrix;
using hyden::Vector;

/// Random point of H_d: spatial part N(0, scale^2 I), last coordinate from the sheet equation.
Vector random_sheet_point(Eigen::Index d, std::mt19937_64& rng, double scale = 1.0);
Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
/// Random symmetric matrices in every slot.
void fill_symmetric(hyden::MatrixSeq& seq, std::mt19937_64& rng);

/// Minimizer of 1/2 |x - y|^2 + w TV(x) by projected gradient on the
/// box-constrained dual, iterated until successive dual iterates move less than `tol`.
std::vector<double> tv1d_dual_projected_gradient(const std::vector<double>& y, double w,
                                                double tol = 1e-15, int max_iter = 10000000);

/// Anisotropic TV of a rows x cols field by FISTA on the dual.
Matrix tv2d_dual_fista(const Matrix& y, double w, double tol = 1e-13, int max_iter = 2000000);

double tv1d_objective(const std::vector<double>& x, const std::vector<double>& y, double w);

/// Two-point prox by exhaustive grid search over [lo, hi]^2 followed by a
/// local refinement; accurate to about `step` / 1e3.
std::pair<double, double> two_point_grid_search(double a, double b, double w);

/// Schur complement of the leading identity block: B - C^T C for m = [I C; C^T B].
Matrix schur_of_identity(const Matrix& m, Eigen::Index k);

/// Eigenvalues by an unrelated routine (Jacobi rotations).
Vector jacobi_eigenvalues(Matrix a);

}  // namespace oracle
