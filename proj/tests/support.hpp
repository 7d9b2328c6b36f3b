#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <vector>

#include "uncert/covariance.hpp"
#include "uncert/oracle.hpp"
#include "uncert/phase_space.hpp"

namespace testsupport {

// Independent oracle for symplectic eigenvalues: moduli of the spectrum
// of i Omega M via a general (non-symmetric) eigensolver. Kept separate
// from the library's Schur-based route on purpose.
inline Eigen::VectorXd sympl_eigs_spectrum_oracle(const Eigen::MatrixXd& m) {
  const int dim = static_cast<int>(m.rows());
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    om(k, k + 1) = -1.0;
    om(k + 1, k) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(om * m);
  std::vector<double> moduli(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // eigenvalues come in +-i lambda pairs; keep one per pair
  Eigen::VectorXd out(dim / 2);
  for (int k = 0; k < dim / 2; ++k) out[k] = moduli[static_cast<std::size_t>(2 * k)];
  return out;
}

// Random symmetric positive-definite matrix with eigenvalues log-uniform
// in [0.1, 10].
inline Eigen::MatrixXd random_spd(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> loge(std::log(0.1), std::log(10.0));
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd e(dim);
  for (int i = 0; i < dim; ++i) e[i] = std::exp(loge(rng));
  Eigen::MatrixXd m = q * e.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose().eval());
}

// Random pure Gaussian covariance (minimal uncertainty, boundary).
inline uncert::CovarianceMatrix random_pure_covariance(const uncert::PhaseSpace& space,
                                                       std::mt19937_64& rng,
                                                       double max_squeeze = 1.0) {
  const Eigen::MatrixXd s = uncert::random_symplectic(space, rng, max_squeeze);
  Eigen::MatrixXd c = 0.5 * space.hbar * (s * s.transpose());
  return uncert::CovarianceMatrix(space, 0.5 * (c + c.transpose().eval()));
}

// Random admissible covariance with symplectic eigenvalues in
// [hbar/2, 3 hbar].
inline uncert::CovarianceMatrix random_admissible_covariance(const uncert::PhaseSpace& space,
                                                             std::mt19937_64& rng,
                                                             double max_squeeze = 1.0) {
  std::uniform_real_distribution<double> occ(0.5, 3.0);
  const Eigen::MatrixXd s = uncert::random_symplectic(space, rng, max_squeeze);
  Eigen::VectorXd d(space.dim());
  for (int k = 0; k < space.n_modes; ++k) d[2 * k] = d[2 * k + 1] = space.hbar * occ(rng);
  Eigen::MatrixXd c = s * d.asDiagonal() * s.transpose();
  return uncert::CovarianceMatrix(space, 0.5 * (c + c.transpose().eval()));
}

// Random pure product state: an independent single-mode symplectic per
// mode, so all cross-mode moments vanish.
inline uncert::CovarianceMatrix random_product_covariance(const uncert::PhaseSpace& space,
                                                          std::mt19937_64& rng,
                                                          double max_squeeze = 1.0) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(space.dim(), space.dim());
  const uncert::PhaseSpace mode{1, space.hbar};
  for (int k = 0; k < space.n_modes; ++k) {
    const Eigen::MatrixXd s = uncert::random_symplectic(mode, rng, max_squeeze);
    Eigen::MatrixXd ck = 0.5 * space.hbar * (s * s.transpose());
    c.block<2, 2>(2 * k, 2 * k) = 0.5 * (ck + ck.transpose().eval());
  }
  return uncert::CovarianceMatrix(space, c);
}

}  // namespace testsupport
