#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uncert/covariance.hpp"
#include "uncert/functional.hpp"

namespace uncert {

/// Which consistency solver reproduces the headline value printed for an
/// entry: General attains the global bound, Product the separable one
/// (used where the gradient matrix is only positive semidefinite and the
/// global infimum is not attained).
enum class MinimizeRoute { General, Product };

/// One named inequality lhs(C) >= bound. `bound` holds for every
/// admissible covariance matrix; `separable_bound`, when present, is the
/// larger bound obeyed by product states, and values in between certify
/// entanglement.
struct InequalitySpec {
  std::string label;
  int arity = 0;  ///< number of modes the lhs expects
  UncertaintyFunctional functional;
  double bound = 0.0;
  std::optional<double> separable_bound;
  std::map<std::string, double> params;
  MinimizeRoute route = MinimizeRoute::General;
};

struct EvalRecord {
  double lhs;
  double bound;
  bool satisfied;
  double margin;  ///< lhs - bound
};

/// Commuting EPR-type operator pairs
///   u_i = alpha_i p1 + beta_i p2,  v_i = gamma_i q1 - delta_i q2
/// with alpha_1^2 + alpha_2^2 = gamma_1^2 + gamma_2^2 = a,
/// beta_1^2 + beta_2^2 = delta_1^2 + delta_2^2 = b and
/// alpha_1 beta_1 + alpha_2 beta_2 = gamma_1 delta_1 + gamma_2 delta_2 = c/2.
struct EPROperatorSet {
  double alpha1, alpha2, beta1, beta2;
  double gamma1, gamma2, delta1, delta2;

  Eigen::Vector4d u1() const { return {alpha1, 0.0, beta1, 0.0}; }
  Eigen::Vector4d u2() const { return {alpha2, 0.0, beta2, 0.0}; }
  Eigen::Vector4d v1() const { return {0.0, gamma1, 0.0, -delta1}; }
  Eigen::Vector4d v2() const { return {0.0, gamma2, 0.0, -delta2}; }
};

enum class Verdict { Entangled, Inconclusive };

/// Deterministic representative of the constraint equations; throws
/// ConstraintError when 4ab < c^2.
EPROperatorSet epr_from_abc(double a, double b, double c);

/// Variance a^T C a of the linear combination a . z (zero-mean states).
double epr_variance(const Eigen::VectorXd& coeffs, const CovarianceMatrix& c);

// Parametrized entries. All bounds are computed from the parameters in
// units of hbar; parameter constraints are validated eagerly.
InequalitySpec detrs_spec(int n_modes, double hbar = 1.0);
InequalitySpec robdof_spec(double hbar = 1.0);
InequalitySpec prodcov_spec(double hbar = 1.0);
InequalitySpec prodrs_spec(double hbar = 1.0);
InequalitySpec mixedprod_spec(double a, double b, int n, double hbar = 1.0);
InequalitySpec corineq_spec(double a, double b, double c, double hbar = 1.0);
InequalitySpec fourepr_spec(double a, double b, double c, double hbar = 1.0);
InequalitySpec duan_spec(double a, double b, double hbar = 1.0);
InequalitySpec sumheis_spec(double hbar = 1.0);
InequalitySpec crossheis_spec(double hbar = 1.0);
InequalitySpec triplesep_spec(double hbar = 1.0);

/// All entries whose arity matches the space, at default parameters.
std::vector<InequalitySpec> catalog(const PhaseSpace& space);

EvalRecord evaluate(const InequalitySpec& spec, const CovarianceMatrix& c,
                    double tol = 1e-9);

/// Entangled iff lhs(C) < separable_bound - tol. The criterion is
/// sufficient only, hence the second verdict is Inconclusive rather than
/// Separable. Throws DefinitenessError for inadmissible C.
Verdict detect_entanglement(const CovarianceMatrix& c, const InequalitySpec& spec);
Verdict detect_entanglement(const CovarianceMatrix& c, const InequalitySpec& spec, double tol);

}  // namespace uncert
