#include "uncert/covariance.hpp"

#include <cmath>
#include <utility>

#include "uncert/errors.hpp"
#include "uncert/symplectic.hpp"

namespace uncert {

namespace {

void require_mode(const PhaseSpace& space, int k, const char* who) {
  if (k < 0 || k >= space.n_modes)
    throw DimensionError(std::string(who) + ": mode index out of range");
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(PhaseSpace space, Eigen::MatrixXd entries)
    : space_(space), entries_(std::move(entries)) {
  validate(space_);
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim())
    throw DimensionError("CovarianceMatrix: entries must be 2N x 2N");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DimensionError("CovarianceMatrix: entries must be symmetric");
  entries_ = 0.5 * (entries_ + entries_.transpose().eval());
}

double CovarianceMatrix::variance_p(int k) const {
  require_mode(space_, k, "variance_p");
  return entries_(2 * k, 2 * k);
}

double CovarianceMatrix::variance_q(int k) const {
  require_mode(space_, k, "variance_q");
  return entries_(2 * k + 1, 2 * k + 1);
}

double CovarianceMatrix::covariance_pq(int k) const {
  require_mode(space_, k, "covariance_pq");
  return entries_(2 * k, 2 * k + 1);
}

double CovarianceMatrix::cross(int mu, int nu) const {
  if (mu < 0 || nu < 0 || mu >= dim() || nu >= dim())
    throw DimensionError("cross: index out of range");
  return entries_(mu, nu);
}

QuantumNumbers::QuantumNumbers(std::vector<int> values) : n_(std::move(values)) {
  if (n_.empty()) throw DimensionError("QuantumNumbers: empty");
  for (int v : n_)
    if (v < 0) throw DomainError("QuantumNumbers: entries must be >= 0");
}

QuantumNumbers QuantumNumbers::ground(int n_modes) {
  if (n_modes < 1) throw DomainError("QuantumNumbers: n_modes must be >= 1");
  return QuantumNumbers(std::vector<int>(static_cast<std::size_t>(n_modes), 0));
}

bool is_admissible(const CovarianceMatrix& c, double tol) {
  const Eigen::VectorXd eigs = symplectic_eigenvalues(c.matrix());
  return eigs.minCoeff() >= 0.5 * c.space().hbar - tol;
}

bool is_admissible(const CovarianceMatrix& c) {
  return is_admissible(c, 1e-9 * c.space().hbar);
}

bool is_pure_gaussian(const CovarianceMatrix& c, double tol) {
  const Eigen::VectorXd eigs = symplectic_eigenvalues(c.matrix());
  const double target = 0.5 * c.space().hbar;
  return (eigs.array() - target).abs().maxCoeff() <= tol;
}

bool is_pure_gaussian(const CovarianceMatrix& c) {
  return is_pure_gaussian(c, 1e-9 * c.space().hbar);
}

bool on_boundary(const CovarianceMatrix& c, double tol) {
  const Eigen::VectorXd eigs = symplectic_eigenvalues(c.matrix());
  return std::abs(eigs.minCoeff() - 0.5 * c.space().hbar) <= tol;
}

bool on_boundary(const CovarianceMatrix& c) {
  return on_boundary(c, 1e-9 * c.space().hbar);
}

CovarianceMatrix number_state_covariance(const PhaseSpace& space, const QuantumNumbers& qn) {
  validate(space);
  if (qn.size() != space.n_modes)
    throw DimensionError("number_state_covariance: quantum numbers do not match n_modes");
  Eigen::VectorXd d(space.dim());
  for (int k = 0; k < space.n_modes; ++k)
    d[2 * k] = d[2 * k + 1] = space.hbar * (qn[k] + 0.5);
  return CovarianceMatrix(space, d.asDiagonal());
}

MomentTriple squeezed_number_triple(int n, double rho, double theta, double hbar) {
  if (n < 0) throw DomainError("squeezed_number_triple: n must be >= 0");
  if (rho < 0.0) throw DomainError("squeezed_number_triple: rho must be >= 0");
  if (!(hbar > 0.0)) throw DomainError("squeezed_number_triple: hbar must be positive");
  const double e_n = (n + 0.5) * hbar;
  return {e_n * std::cosh(rho), e_n * std::sinh(rho) * std::cos(theta),
          e_n * std::sinh(rho) * std::sin(theta)};
}

MomentTriple triple_from_covariance(const CovarianceMatrix& c) {
  if (c.space().n_modes != 1)
    throw DimensionError("triple_from_covariance: expects a single-mode covariance");
  const double x = c.variance_p(0);
  const double y = c.variance_q(0);
  return {0.5 * (x + y), 0.5 * (x - y), c.covariance_pq(0)};
}

CovarianceMatrix covariance_from_triple(const MomentTriple& t, double hbar) {
  if (!(t.u > 0.0) || !(t.u > std::abs(t.v)))
    throw DomainError("covariance_from_triple: need u > 0 and u > |v|");
  Eigen::Matrix2d m;
  m << t.u + t.v, t.w, t.w, t.u - t.v;
  return CovarianceMatrix(PhaseSpace{1, hbar}, m);
}

double superposition_0M_variance(int m, double t, double hbar) {
  if (m < 2) throw DomainError("superposition_0M_variance: M must be >= 2");
  if (!(hbar > 0.0)) throw DomainError("superposition_0M_variance: hbar must be positive");
  const double t_max = 1.0 - 1.0 / (2.0 * m + 1.0);
  if (t < 0.0 || t > t_max)
    throw DomainError("superposition_0M_variance: t must lie in [0, 1 - 1/(2M+1)]");
  return (1.0 - t) * (m + 0.5) * hbar;
}

CovarianceMatrix two_mode_squeezed_covariance(double r, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("two_mode_squeezed_covariance: hbar must be positive");
  const double ch = 0.5 * hbar * std::cosh(2.0 * r);
  const double sh = 0.5 * hbar * std::sinh(2.0 * r);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.diagonal().setConstant(ch);
  m(0, 2) = m(2, 0) = -sh;  // p1 p2
  m(1, 3) = m(3, 1) = sh;   // q1 q2
  return CovarianceMatrix(PhaseSpace{2, hbar}, m);
}

}  // namespace uncert
