#include "uncert/region.hpp"

#include <algorithm>
#include <cmath>

#include "uncert/errors.hpp"
#include "uncert/symplectic.hpp"

namespace uncert {

namespace {

constexpr double kBoundaryRel = 1e-8;

double invariant_mass_sq(const MomentTriple& t) {
  return t.u * t.u - t.v * t.v - t.w * t.w;
}

}  // namespace

HyperboloidSheet sheet(int n, double hbar) {
  if (n < 0) throw DomainError("sheet: n must be >= 0");
  if (!(hbar > 0.0)) throw DomainError("sheet: hbar must be positive");
  return {n, (n + 0.5) * hbar};
}

bool region_contains(const MomentTriple& t, double tol, double hbar) {
  const double e0 = 0.5 * hbar;
  return t.u > 0.0 && invariant_mass_sq(t) >= e0 * e0 - tol;
}

std::optional<int> sheet_of(const MomentTriple& t, double tol, double hbar) {
  if (!(t.u > 0.0)) return std::nullopt;
  const double q = invariant_mass_sq(t);
  if (q <= 0.0) return std::nullopt;
  // e_n^2 grows monotonically; invert and check the two neighbours
  const double n_guess = std::sqrt(q) / hbar - 0.5;
  for (int n = std::max(0, static_cast<int>(std::floor(n_guess)));
       n <= static_cast<int>(std::ceil(n_guess)) + 1; ++n) {
    const double en2 = (n + 0.5) * hbar * (n + 0.5) * hbar;
    if (std::abs(q - en2) <= tol) return n;
  }
  return std::nullopt;
}

ConvexDecomposition convex_decompose(const MomentTriple& target, double angle_seed,
                                     double hbar) {
  if (!(hbar > 0.0)) throw DomainError("convex_decompose: hbar must be positive");
  const double e0 = 0.5 * hbar;
  const double q = invariant_mass_sq(target);
  const double rel = (q - e0 * e0) / (e0 * e0);
  if (!(target.u > 0.0) || rel < -kBoundaryRel)
    throw DomainError("convex_decompose: target lies outside the uncertainty region");
  if (rel <= kBoundaryRel)
    throw BoundaryError(
        "convex_decompose: target lies on the boundary and admits no nontrivial mixture");

  // Work in the 2-plane spanned by the u-axis and the target: rotate
  // (v, w) -> (r, 0).
  const double r = std::hypot(target.v, target.w);
  const bool on_axis = r < 1e-14 * target.u;
  const double plane = on_axis ? angle_seed : std::atan2(target.w, target.v);
  const double rho_target = std::asinh(r / e0);

  for (int attempt = 0; attempt < 8; ++attempt) {
    // boundary anchor on the opposite side of the target's projection
    const double rho_phi =
        rho_target + 1.0 + (on_axis ? 0.0 : std::abs(angle_seed)) + attempt;
    const double u_phi = e0 * std::cosh(rho_phi);
    const double v_phi = -e0 * std::sinh(rho_phi);

    const double du = target.u - u_phi;
    const double dv = r - v_phi;
    const double denom = du * du - dv * dv;
    if (std::abs(denom) < 1e-14 * (du * du + dv * dv)) continue;  // chord along an asymptote

    // phi sits on the hyperbola, so the second intersection of the line
    // phi + s (target - phi) solves a quadratic with zero constant term
    const double s_star = -2.0 * (u_phi * du - v_phi * dv) / denom;
    if (!(s_star > 1.0)) continue;

    const double u_psi = u_phi + s_star * du;
    const double v_psi = v_phi + s_star * dv;
    if (!(u_psi > 0.0)) continue;

    const double t0 = 1.0 / s_star;
    if (!(t0 >= 0.0 && t0 <= 1.0)) continue;

    const double cp = std::cos(plane), sp = std::sin(plane);
    ConvexDecomposition out;
    out.phi = {u_phi, v_phi * cp, v_phi * sp};
    out.psi = {u_psi, v_psi * cp, v_psi * sp};
    out.t0 = t0;
    return out;
  }
  throw ConvergenceError("convex_decompose: no valid boundary chord found", 0.0, 8);
}

ConvexityCheck convexity_check(const CovarianceMatrix& c1, const CovarianceMatrix& c2,
                               double t) {
  if (c1.space().n_modes != c2.space().n_modes)
    throw DimensionError("convexity_check: covariance matrices of different size");
  if (t < 0.0 || t > 1.0) throw DomainError("convexity_check: t must lie in [0, 1]");

  const double hbar = c1.space().hbar;
  const int n = c1.space().n_modes;
  const double det_bound = std::pow(0.5 * hbar, 2 * n);
  const double d1 = c1.matrix().determinant();
  const double d2 = c2.matrix().determinant();
  if (std::abs(d1 - det_bound) > kBoundaryRel * det_bound ||
      std::abs(d2 - det_bound) > kBoundaryRel * det_bound)
    throw DomainError("convexity_check: inputs must sit on the determinant boundary");

  const Eigen::MatrixXd mix = t * c1.matrix() + (1.0 - t) * c2.matrix();
  const CovarianceMatrix mixture(c1.space(), mix);
  ConvexityCheck out;
  out.det_ok = mix.determinant() >= det_bound * (1.0 - 1e-10);
  out.admissible = is_admissible(mixture);
  return out;
}

HoleWitness hole_witness(const CovarianceMatrix& target) {
  if (!is_admissible(target))
    throw DefinitenessError("hole_witness: target is not quantum-admissible", target.matrix());

  const double hbar = target.space().hbar;
  const WilliamsonResult w = williamson(target.matrix());
  const double s_max = w.sympl_eigs.maxCoeff();

  HoleWitness out;
  out.m = std::max(2, static_cast<int>(std::ceil(s_max / hbar - 0.5 - 1e-12)));
  const double top = (out.m + 0.5) * hbar;
  out.t.reserve(static_cast<std::size_t>(w.sympl_eigs.size()));
  for (int k = 0; k < w.sympl_eigs.size(); ++k) {
    // superposition variance t (hbar/2) + (1-t)(M+1/2) hbar matched to s_k
    const double t = (top - w.sympl_eigs[k]) / (top - 0.5 * hbar);
    out.t.push_back(std::clamp(t, 0.0, 1.0));
  }
  // target = sigma^-1 D sigma^-T, i.e. the inverse-transpose of the
  // Williamson transform (which satisfies target = Sigma^T D Sigma)
  out.sigma = w.sigma.transpose().inverse();
  return out;
}

}  // namespace uncert
