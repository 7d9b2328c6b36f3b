#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "uncert/covariance.hpp"
#include "uncert/functional.hpp"

namespace uncert {

struct BruteForceResult {
  double value;
  CovarianceMatrix covariance;
};

/// Best-effort minimization of f over pure Gaussian covariances
/// C = Sigma (hbar/2) Sigma^T. Each restart draws a random layered
/// circuit of single-mode rotations/squeezers and two-mode mixers, then
/// refines its parameters by cyclic line searches. Deterministic for a
/// fixed seed; restarts run in parallel with per-restart seed
/// derivation.
BruteForceResult brute_force_minimize(const UncertaintyFunctional& f, int restarts,
                                      std::uint64_t seed);

/// Random symplectic matrix drawn from the same layered-circuit family
/// (squeeze magnitudes bounded by max_squeeze).
Eigen::MatrixXd random_symplectic(const PhaseSpace& space, std::mt19937_64& rng,
                                  double max_squeeze = 1.0);

}  // namespace uncert
