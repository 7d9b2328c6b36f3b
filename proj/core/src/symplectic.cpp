#include "uncert/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "uncert/errors.hpp"

namespace uncert {

namespace {

constexpr double kDegeneracyFloor = 1e-12;
constexpr double kSymmetryTol = 1e-9;

Eigen::MatrixXd omega_matrix(int dim) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k + 1 < dim; k += 2) {
    om(k, k + 1) = -1.0;
    om(k + 1, k) = 1.0;
  }
  return om;
}

void require_square_even(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(who) + ": matrix is not square");
  if (m.rows() % 2 != 0 || m.rows() == 0)
    throw DimensionError(std::string(who) + ": dimension must be a positive even number");
}

void require_symmetric(const Eigen::MatrixXd& m, const char* who) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale)
    throw DimensionError(std::string(who) + ": matrix is not symmetric");
}

// Orthogonal reduction of a nonsingular antisymmetric matrix to
// block-diagonal form o^T * a * o = blkdiag(l_k * [[0,-1],[1,0]]) with
// l_1 >= ... >= l_N > 0.
struct SkewCanonical {
  Eigen::MatrixXd o;
  Eigen::VectorXd lambda;
};

SkewCanonical skew_canonical_form(const Eigen::MatrixXd& a) {
  const int dim = static_cast<int>(a.rows());
  const int n = dim / 2;

  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  Eigen::MatrixXd t = schur.matrixT();
  Eigen::MatrixXd o = schur.matrixU();

  const double scale = t.cwiseAbs().maxCoeff();
  std::vector<std::pair<double, int>> blocks;  // (lambda, first row of block)
  int i = 0;
  while (i < dim) {
    if (i + 1 < dim && std::abs(t(i + 1, i)) > 1e-13 * scale) {
      double lam = 0.5 * (t(i + 1, i) - t(i, i + 1));
      if (lam < 0.0) {
        // flip the block so that t(i, i+1) = -lambda < 0
        o.col(i).swap(o.col(i + 1));
        lam = -lam;
      }
      blocks.emplace_back(lam, i);
      i += 2;
    } else {
      throw DefinitenessError("skew_canonical_form: real eigenvalue encountered", a);
    }
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  SkewCanonical out;
  out.o.resize(dim, dim);
  out.lambda.resize(n);
  for (int k = 0; k < n; ++k) {
    out.lambda[k] = blocks[k].first;
    out.o.col(2 * k) = o.col(blocks[k].second);
    out.o.col(2 * k + 1) = o.col(blocks[k].second + 1);
  }
  return out;
}

// Returns the symmetric square root and checks definiteness.
Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& m, const char* who) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() <= kDegeneracyFloor * std::max(0.0, ev.maxCoeff()))
    throw DefinitenessError(std::string(who) + ": matrix is not positive definite", m);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

void validate(const PhaseSpace& space) {
  if (space.n_modes < 1) throw DomainError("PhaseSpace: n_modes must be >= 1");
  if (!(space.hbar > 0.0)) throw DomainError("PhaseSpace: hbar must be positive");
}

Eigen::MatrixXd standard_form(const PhaseSpace& space) {
  validate(space);
  return omega_matrix(space.dim());
}

bool is_symplectic(const Eigen::MatrixXd& m, double tol) {
  require_square_even(m, "is_symplectic");
  const Eigen::MatrixXd om = omega_matrix(static_cast<int>(m.rows()));
  return ((m.transpose() * om * m) - om).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXd WilliamsonResult::d_matrix() const {
  const int n = static_cast<int>(sympl_eigs.size());
  Eigen::VectorXd d(2 * n);
  for (int k = 0; k < n; ++k) d[2 * k] = d[2 * k + 1] = sympl_eigs[k];
  return d.asDiagonal();
}

WilliamsonResult williamson(const Eigen::MatrixXd& m) {
  require_square_even(m, "williamson");
  require_symmetric(m, "williamson");

  const Eigen::MatrixXd sqrt_m = spd_sqrt(m, "williamson");
  const Eigen::MatrixXd om = omega_matrix(static_cast<int>(m.rows()));
  Eigen::MatrixXd a = sqrt_m * om * sqrt_m;
  a = 0.5 * (a - a.transpose().eval());

  const SkewCanonical canon = skew_canonical_form(a);

  const int n = static_cast<int>(canon.lambda.size());
  Eigen::VectorXd d_inv_sqrt(2 * n);
  for (int k = 0; k < n; ++k)
    d_inv_sqrt[2 * k] = d_inv_sqrt[2 * k + 1] = 1.0 / std::sqrt(canon.lambda[k]);

  WilliamsonResult out;
  out.sympl_eigs = canon.lambda;
  out.sigma = d_inv_sqrt.asDiagonal() * canon.o.transpose() * sqrt_m;
  return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& m) {
  require_square_even(m, "symplectic_eigenvalues");
  require_symmetric(m, "symplectic_eigenvalues");

  const Eigen::MatrixXd sqrt_m = spd_sqrt(m, "symplectic_eigenvalues");
  const Eigen::MatrixXd om = omega_matrix(static_cast<int>(m.rows()));
  Eigen::MatrixXd a = sqrt_m * om * sqrt_m;
  a = 0.5 * (a - a.transpose().eval());
  return skew_canonical_form(a).lambda;
}

std::pair<Eigen::Matrix2d, Eigen::Matrix2d> single_mode_factors(double b, double gamma) {
  Eigen::Matrix2d g, s;
  g << 1.0, 0.0, b, 1.0;
  s << std::exp(-gamma), 0.0, 0.0, std::exp(gamma);
  return {g, s};
}

Eigen::MatrixXd apply_congruence(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& c) {
  if (sigma.rows() != sigma.cols() || c.rows() != c.cols() || sigma.rows() != c.rows())
    throw DimensionError("apply_congruence: dimension mismatch");
  Eigen::MatrixXd out = sigma * c * sigma.transpose();
  return 0.5 * (out + out.transpose().eval());
}

}  // namespace uncert
