#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "uncert/covariance.hpp"

namespace uncert {

/// Sheet n of the two-sheeted hyperboloid u^2 - v^2 - w^2 = e_n^2, u > 0,
/// with e_n = (n + 1/2) hbar.
struct HyperboloidSheet {
  int n;
  double e_n;
};

HyperboloidSheet sheet(int n, double hbar = 1.0);

/// Convex split of an interior moment triple into two boundary triples:
/// target = t0 * psi + (1 - t0) * phi with phi, psi on sheet 0.
struct ConvexDecomposition {
  MomentTriple phi;
  MomentTriple psi;
  double t0;
};

/// Witness that an admissible covariance matrix arises from a pure
/// product state: per-mode |0>/|M> superposition weights t_k chosen so
/// the mode variances hit the symplectic eigenvalues s_k, plus the
/// symplectic transform undoing the diagonalization,
/// target = sigma^-1 diag(s_1, s_1, ..., s_N, s_N) sigma^-T.
struct HoleWitness {
  int m;
  std::vector<double> t;
  Eigen::MatrixXd sigma;
};

/// True iff u > 0 and u^2 - v^2 - w^2 >= (hbar/2)^2 - tol.
bool region_contains(const MomentTriple& t, double tol, double hbar = 1.0);

/// The sheet index n with |u^2 - v^2 - w^2 - e_n^2| <= tol (and u > 0),
/// or nothing when the triple lies strictly between sheets.
std::optional<int> sheet_of(const MomentTriple& t, double tol, double hbar = 1.0);

/// Decomposes a strictly interior triple into a mixture of two boundary
/// triples. Different angle_seed values produce different valid
/// decompositions. Throws BoundaryError for boundary targets (they admit
/// no nontrivial mixture) and DomainError for targets outside the
/// region.
ConvexDecomposition convex_decompose(const MomentTriple& target, double angle_seed,
                                     double hbar = 1.0);

struct ConvexityCheck {
  bool det_ok;
  bool admissible;
};

/// Evaluates the mixture t*C1 + (1-t)*C2 of two determinant-boundary
/// covariance matrices: det_ok iff det(mixture) >= (hbar/2)^(2N)(1 - 1e-10),
/// admissible per is_admissible.
ConvexityCheck convexity_check(const CovarianceMatrix& c1, const CovarianceMatrix& c2,
                               double t);

/// Pure-product-state witness for an admissible target (see HoleWitness).
HoleWitness hole_witness(const CovarianceMatrix& target);

}  // namespace uncert
