#pragma once

#include <Eigen/Dense>

#include <utility>

#include "uncert/phase_space.hpp"

namespace uncert {

/// True iff ||M^T Omega M - Omega||_max <= tol. Throws DimensionError for
/// non-square or odd-dimensional input.
bool is_symplectic(const Eigen::MatrixXd& m, double tol);

/// Symplectic diagonalization M = sigma^T * D * sigma of a symmetric
/// positive-definite matrix, with D = diag(l_1, l_1, ..., l_N, l_N).
struct WilliamsonResult {
  Eigen::MatrixXd sigma;       ///< symplectic transform
  Eigen::VectorXd sympl_eigs;  ///< l_1 >= ... >= l_N > 0

  /// The diagonal factor D with each symplectic eigenvalue doubled.
  Eigen::MatrixXd d_matrix() const;
};

/// Williamson decomposition.
///
/// The input must be symmetric and positive definite; matrices whose
/// smallest eigenvalue falls below 1e-12 times the largest are rejected
/// with a DefinitenessError (the decomposition is ill-conditioned at the
/// definiteness boundary). Symplectic eigenvalues are returned in
/// descending order and equal the positive imaginary parts of the
/// spectrum of Omega*M.
WilliamsonResult williamson(const Eigen::MatrixXd& m);

/// Symplectic eigenvalues only (descending), skipping the transform.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& m);

/// Single-mode shear and squeeze factors
///   G_b = [[1, 0], [b, 1]],  S_gamma = [[e^-gamma, 0], [0, e^gamma]].
std::pair<Eigen::Matrix2d, Eigen::Matrix2d> single_mode_factors(double b, double gamma);

/// Congruence sigma * C * sigma^T of a symmetric matrix. Preserves
/// symmetry; for symplectic sigma it also preserves the symplectic
/// spectrum.
Eigen::MatrixXd apply_congruence(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& c);

}  // namespace uncert
