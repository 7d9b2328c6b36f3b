#pragma once

#include <Eigen/Dense>

#include <vector>

#include "uncert/phase_space.hpp"

namespace uncert {

/// Symmetric matrix of second moments c_{mu nu} over a phase space.
/// Construction checks shape and symmetry only; positive definiteness
/// and quantum admissibility are separate predicates so that unphysical
/// matrices can be represented and then diagnosed.
class CovarianceMatrix {
 public:
  CovarianceMatrix(PhaseSpace space, Eigen::MatrixXd entries);

  const PhaseSpace& space() const { return space_; }
  const Eigen::MatrixXd& matrix() const { return entries_; }
  int dim() const { return space_.dim(); }

  /// x_k = Var(p_k), mode index zero-based.
  double variance_p(int k) const;
  /// y_k = Var(q_k).
  double variance_q(int k) const;
  /// w_k = Cov(p_k, q_k).
  double covariance_pq(int k) const;
  /// Arbitrary moment c_{mu nu}.
  double cross(int mu, int nu) const;

 private:
  PhaseSpace space_;
  Eigen::MatrixXd entries_;
};

/// N=1 coordinates of a covariance matrix: u = (x+y)/2, v = (x-y)/2,
/// w the p-q covariance. Physical triples satisfy u > 0 and u > |v|.
struct MomentTriple {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

/// Occupation numbers n_1..n_N, all >= 0.
struct QuantumNumbers {
  explicit QuantumNumbers(std::vector<int> values);
  static QuantumNumbers ground(int n_modes);

  const std::vector<int>& values() const { return n_; }
  int size() const { return static_cast<int>(n_.size()); }
  int operator[](int k) const { return n_[static_cast<std::size_t>(k)]; }

 private:
  std::vector<int> n_;
};

/// True iff every symplectic eigenvalue is >= hbar/2 - tol. Throws
/// DefinitenessError when C is not positive definite (no verdict for
/// unphysical input). tol is absolute, in the same units as C.
bool is_admissible(const CovarianceMatrix& c, double tol);
bool is_admissible(const CovarianceMatrix& c);  // tol = 1e-9 * hbar

/// True iff every symplectic eigenvalue equals hbar/2 within tol.
bool is_pure_gaussian(const CovarianceMatrix& c, double tol);
bool is_pure_gaussian(const CovarianceMatrix& c);

/// True iff the smallest symplectic eigenvalue equals hbar/2 within tol.
bool on_boundary(const CovarianceMatrix& c, double tol);
bool on_boundary(const CovarianceMatrix& c);

/// hbar * diag(n_1 + 1/2, n_1 + 1/2, ..., n_N + 1/2, n_N + 1/2).
CovarianceMatrix number_state_covariance(const PhaseSpace& space, const QuantumNumbers& qn);

/// Moments of a squeezed number state: u = e_n cosh(rho),
/// v = e_n sinh(rho) cos(theta), w = e_n sinh(rho) sin(theta) with
/// e_n = (n + 1/2) hbar. Lies on sheet n: u^2 - v^2 - w^2 = e_n^2.
MomentTriple squeezed_number_triple(int n, double rho, double theta, double hbar = 1.0);

MomentTriple triple_from_covariance(const CovarianceMatrix& c);
CovarianceMatrix covariance_from_triple(const MomentTriple& t, double hbar = 1.0);

/// Position/momentum variance (1 - t)(M + 1/2) hbar of the superposition
/// sqrt(t)|0> + sqrt(1-t)|M>, M >= 2. Accepted inputs are
/// t in [0, 1 - 1/(2M+1)] so the returned value stays >= hbar/2.
double superposition_0M_variance(int m, double t, double hbar = 1.0);

/// Two-mode squeezed vacuum: per-mode variances (hbar/2) cosh(2r),
/// Cov(p1,p2) = -(hbar/2) sinh(2r), Cov(q1,q2) = +(hbar/2) sinh(2r).
/// Pure Gaussian for every r; the combination q1-q2, p1+p2 is squeezed
/// for r > 0.
CovarianceMatrix two_mode_squeezed_covariance(double r, double hbar = 1.0);

}  // namespace uncert
