#pragma once

#include <Eigen/Dense>

namespace uncert {

/// N canonical degrees of freedom. All vectors and matrices over phase
/// space use the mode-major ordering z = (p_1, q_1, ..., p_N, q_N), so
/// mode k (zero-based) owns rows/columns 2k and 2k+1.
struct PhaseSpace {
  int n_modes = 1;
  double hbar = 1.0;

  int dim() const { return 2 * n_modes; }
};

/// Throws DomainError unless n_modes >= 1 and hbar > 0.
void validate(const PhaseSpace& space);

/// The commutation kernel Omega, [z_mu, z_nu] = i hbar Omega_{mu nu}:
/// block-diagonal copies of [[0, -1], [1, 0]]. Omega^2 = -I.
Eigen::MatrixXd standard_form(const PhaseSpace& space);

}  // namespace uncert
