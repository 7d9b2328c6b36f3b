#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>

#include "uncert/covariance.hpp"
#include "uncert/phase_space.hpp"

namespace uncert {

/// Partial derivatives df/dc_{mu nu} for mu <= nu, packed row-major over
/// the upper triangle (length N(2N+1)).
using MomentGradient = Eigen::VectorXd;

/// Number of independent second moments, N(2N+1).
int moment_count(const PhaseSpace& space);

/// Position of the partial df/dc_{mu nu} (mu <= nu) inside a
/// MomentGradient for a 2N-dimensional space.
int moment_index(int dim, int mu, int nu);

/// A smooth scalar function of the independent second moments together
/// with its gradient. When no analytic gradient is supplied, a central
/// finite-difference fallback is used (step 1e-6 * max(hbar, ||C||_max)).
struct UncertaintyFunctional {
  PhaseSpace space;
  std::string label;
  std::function<double(const CovarianceMatrix&)> evaluate;
  std::function<MomentGradient(const CovarianceMatrix&)> gradient;  // optional
};

MomentGradient finite_difference_gradient(const UncertaintyFunctional& f,
                                          const CovarianceMatrix& c);

/// The symmetric matrix F built from the partials of f at C: diagonal
/// entries f_{c_mu_mu}, off-diagonal entries f_{c_mu_nu}/2.
Eigen::MatrixXd f_matrix(const UncertaintyFunctional& f, const CovarianceMatrix& c);

struct SolveOptions {
  double damping = 0.5;        ///< step fraction toward the fixed-point map
  int max_iterations = 500;
  double step_tol_rel = 1e-10; ///< ||C_{k+1} - C_k||_F <= tol * ||C_k||_F
  int max_halvings = 6;
  bool scan_excited = false;   ///< minimize: also solve each n_k = 1
  std::optional<CovarianceMatrix> init;  ///< overrides the default start
};

struct ExtremumResult {
  CovarianceMatrix covariance;
  double value;
  QuantumNumbers qn;
  double residual;   ///< ||C - Sigma^-1 N Sigma^-T||_F at the returned C
  int iterations;
};

/// Solves the self-consistency fixed point
///   C = Sigma(F(C))^-1 * N * Sigma(F(C))^-T,
/// where F(C) = Sigma^T D Sigma is the Williamson decomposition of the
/// gradient matrix and N = hbar diag(n_k + 1/2, each twice, paired with
/// the descending symplectic eigenvalues). Damped iteration; throws
/// DefinitenessError (with the offending C) if F loses positive
/// definiteness and ConvergenceError if the budget runs out.
ExtremumResult solve_consistency(const UncertaintyFunctional& f, const QuantumNumbers& qn,
                                 const CovarianceMatrix& init, const SolveOptions& opts = {});

/// Product-state (separable) variant: the covariance is restricted to
/// the block-diagonal form of a product state and each mode satisfies
/// the single-mode conditions
///   x_k f_{x_k} = y_k f_{y_k},  2 w_k f_{y_k} = -x_k f_{w_k},
///   x_k y_k - w_k^2 = hbar^2 (n_k + 1/2)^2.
/// The functional may couple the local moments of different modes; only
/// its values on block-diagonal covariances are consulted.
ExtremumResult solve_consistency_product(const UncertaintyFunctional& f,
                                         const QuantumNumbers& qn,
                                         const SolveOptions& opts = {});

/// Single-mode closed form: the returned C satisfies
/// F C / sqrt(det F) = hbar (n + 1/2) I.
ExtremumResult solve_consistency_n1(const UncertaintyFunctional& f, int n,
                                    const SolveOptions& opts = {});

/// Ground-state extremum (qn = 0). With scan_excited set, each vector
/// with one n_k = 1 is solved as well and the smallest value returned.
ExtremumResult minimize(const UncertaintyFunctional& f, const SolveOptions& opts = {});

/// f = Tr(A C) for symmetric A; the F matrix equals A everywhere.
UncertaintyFunctional make_trace_functional(const PhaseSpace& space, Eigen::MatrixXd a,
                                            std::string label);

/// f = det C; the F matrix is det(C) * C^-1.
UncertaintyFunctional make_det_functional(const PhaseSpace& space);

/// Wraps an evaluate-only callable; gradients fall back to finite
/// differences.
UncertaintyFunctional make_evaluate_only(const PhaseSpace& space,
                                         std::function<double(const CovarianceMatrix&)> fn,
                                         std::string label);

}  // namespace uncert
