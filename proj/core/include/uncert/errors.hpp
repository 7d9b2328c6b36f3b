#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace uncert {

/// Wrong matrix/vector shape, odd phase-space dimension, or mode index
/// out of range.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Scalar argument outside its admissible range.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A matrix required to be positive definite is not (or an inadmissible
/// covariance matrix was passed where a physical one is required).
/// Carries the offending matrix when available.
struct DefinitenessError : std::domain_error {
  explicit DefinitenessError(const std::string& what) : std::domain_error(what) {}
  DefinitenessError(const std::string& what, Eigen::MatrixXd mat)
      : std::domain_error(what), offending(std::move(mat)) {}

  std::optional<Eigen::MatrixXd> offending;
};

/// Parameter set violates an algebraic constraint (e.g. 4ab >= c^2).
struct ConstraintError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Fixed-point iteration exhausted its budget without meeting tolerance.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), last_residual(residual), iterations(iterations) {}

  double last_residual;
  int iterations;
};

/// Input sits on a boundary where the requested construction degenerates.
struct BoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace uncert
