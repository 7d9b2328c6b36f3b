#include "uncert/functional.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "uncert/errors.hpp"
#include "uncert/symplectic.hpp"

namespace uncert {

namespace {

Eigen::MatrixXd n_matrix(const PhaseSpace& space, const QuantumNumbers& qn) {
  Eigen::VectorXd d(space.dim());
  for (int k = 0; k < space.n_modes; ++k)
    d[2 * k] = d[2 * k + 1] = space.hbar * (qn[k] + 0.5);
  return d.asDiagonal();
}

// Sigma^-1 * N * Sigma^-T without forming the inverse.
Eigen::MatrixXd inverse_congruence(const Eigen::MatrixXd& sigma, const Eigen::MatrixXd& nmat) {
  const auto lu = sigma.partialPivLu();
  Eigen::MatrixXd t = lu.solve(lu.solve(nmat).transpose());
  return 0.5 * (t + t.transpose().eval());
}

void require_qn(const PhaseSpace& space, const QuantumNumbers& qn, const char* who) {
  if (qn.size() != space.n_modes)
    throw DimensionError(std::string(who) + ": quantum numbers do not match n_modes");
}

// Common damped fixed-point driver. `map` produces the target covariance
// for the current iterate; the iteration is
//   C <- (1 - alpha) C + alpha map(C)
// with alpha halved while the map residual grows and restored once it
// shrinks again.
template <typename Map>
ExtremumResult iterate_fixed_point(const UncertaintyFunctional& f, const QuantumNumbers& qn,
                                   Eigen::MatrixXd c, const SolveOptions& opts, Map&& map) {
  const PhaseSpace& space = f.space;
  double alpha = opts.damping;
  int halvings = 0;
  double prev_res = std::numeric_limits<double>::infinity();
  double res = prev_res;

  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    const Eigen::MatrixXd target = map(c);
    res = (target - c).norm();

    // halve on non-decrease: a marginal period-2 oscillation keeps the
    // residual constant, so a strict-increase trigger would never fire
    if (res > 0.999 * prev_res && halvings < opts.max_halvings) {
      alpha *= 0.5;
      ++halvings;
    } else if (res <= 0.999 * prev_res) {
      alpha = opts.damping;
      halvings = 0;
    }
    prev_res = res;

    const Eigen::MatrixXd next = (1.0 - alpha) * c + alpha * target;
    const double step = (next - c).norm();
    c = 0.5 * (next + next.transpose().eval());

    const double scale = std::max(c.norm(), space.hbar);
    if (step <= opts.step_tol_rel * scale && res <= 10.0 * opts.step_tol_rel * scale) {
      CovarianceMatrix cc(space, c);
      const double residual = (map(c) - c).norm();
      return ExtremumResult{cc, f.evaluate(cc), qn, residual, iter};
    }
  }
  throw ConvergenceError("solve_consistency: no convergence within max_iterations", res,
                         opts.max_iterations);
}

}  // namespace

int moment_count(const PhaseSpace& space) {
  return space.n_modes * (2 * space.n_modes + 1);
}

int moment_index(int dim, int mu, int nu) {
  if (mu > nu) std::swap(mu, nu);
  if (mu < 0 || nu >= dim) throw DimensionError("moment_index: index out of range");
  return mu * dim - mu * (mu + 1) / 2 + nu;
}

MomentGradient finite_difference_gradient(const UncertaintyFunctional& f,
                                          const CovarianceMatrix& c) {
  const int dim = c.dim();
  const double h = 1e-6 * std::max(c.space().hbar, c.matrix().cwiseAbs().maxCoeff());
  MomentGradient g(moment_count(c.space()));
  for (int mu = 0; mu < dim; ++mu) {
    for (int nu = mu; nu < dim; ++nu) {
      Eigen::MatrixXd up = c.matrix();
      Eigen::MatrixXd down = c.matrix();
      up(mu, nu) += h;
      down(mu, nu) -= h;
      if (mu != nu) {
        up(nu, mu) += h;
        down(nu, mu) -= h;
      }
      const double fp = f.evaluate(CovarianceMatrix(c.space(), up));
      const double fm = f.evaluate(CovarianceMatrix(c.space(), down));
      g[moment_index(dim, mu, nu)] = (fp - fm) / (2.0 * h);
    }
  }
  return g;
}

Eigen::MatrixXd f_matrix(const UncertaintyFunctional& f, const CovarianceMatrix& c) {
  const int dim = c.dim();
  const MomentGradient g = f.gradient ? f.gradient(c) : finite_difference_gradient(f, c);
  if (g.size() != moment_count(c.space()))
    throw DimensionError("f_matrix: gradient has the wrong number of partials");
  Eigen::MatrixXd fm(dim, dim);
  for (int mu = 0; mu < dim; ++mu) {
    fm(mu, mu) = g[moment_index(dim, mu, mu)];
    for (int nu = mu + 1; nu < dim; ++nu)
      fm(mu, nu) = fm(nu, mu) = 0.5 * g[moment_index(dim, mu, nu)];
  }
  return fm;
}

ExtremumResult solve_consistency(const UncertaintyFunctional& f, const QuantumNumbers& qn,
                                 const CovarianceMatrix& init, const SolveOptions& opts) {
  require_qn(f.space, qn, "solve_consistency");
  if (init.space().n_modes != f.space.n_modes)
    throw DimensionError("solve_consistency: init does not match the functional's space");

  const Eigen::MatrixXd nmat = n_matrix(f.space, qn);
  auto map = [&](const Eigen::MatrixXd& c) {
    const CovarianceMatrix cc(f.space, c);
    const Eigen::MatrixXd fm = f_matrix(f, cc);
    WilliamsonResult w;
    try {
      w = williamson(fm);
    } catch (const DefinitenessError&) {
      throw DefinitenessError("solve_consistency: F lost positive definiteness", c);
    }
    return inverse_congruence(w.sigma, nmat);
  };
  return iterate_fixed_point(f, qn, init.matrix(), opts, map);
}

ExtremumResult solve_consistency_product(const UncertaintyFunctional& f,
                                         const QuantumNumbers& qn, const SolveOptions& opts) {
  require_qn(f.space, qn, "solve_consistency_product");
  const PhaseSpace& space = f.space;

  auto map = [&](const Eigen::MatrixXd& c) {
    const CovarianceMatrix cc(space, c);
    const Eigen::MatrixXd fm = f_matrix(f, cc);
    Eigen::MatrixXd target = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (int k = 0; k < space.n_modes; ++k) {
      Eigen::Matrix2d fk = fm.block<2, 2>(2 * k, 2 * k);
      fk = 0.5 * (fk + fk.transpose().eval());
      const double det = fk.determinant();
      if (!(fk(0, 0) > 0.0) || !(det > 0.0))
        throw DefinitenessError("solve_consistency_product: mode block of F not positive definite",
                                c);
      // single-mode closed form C_k = hbar (n_k + 1/2) sqrt(det F_k) F_k^-1
      Eigen::Matrix2d inv;
      inv << fk(1, 1), -fk(0, 1), -fk(1, 0), fk(0, 0);
      inv /= det;
      target.block<2, 2>(2 * k, 2 * k) = space.hbar * (qn[k] + 0.5) * std::sqrt(det) * inv;
    }
    return target;
  };

  Eigen::MatrixXd c0 =
      opts.init ? opts.init->matrix() : number_state_covariance(space, qn).matrix();
  // the product iteration lives on block-diagonal covariances
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(space.dim(), space.dim());
  for (int k = 0; k < space.n_modes; ++k)
    c.block<2, 2>(2 * k, 2 * k) = c0.block<2, 2>(2 * k, 2 * k);

  return iterate_fixed_point(f, qn, c, opts, map);
}

ExtremumResult solve_consistency_n1(const UncertaintyFunctional& f, int n,
                                    const SolveOptions& opts) {
  if (f.space.n_modes != 1)
    throw DimensionError("solve_consistency_n1: functional must be single-mode");
  if (n < 0) throw DomainError("solve_consistency_n1: n must be >= 0");
  return solve_consistency_product(f, QuantumNumbers({n}), opts);
}

ExtremumResult minimize(const UncertaintyFunctional& f, const SolveOptions& opts) {
  const QuantumNumbers ground = QuantumNumbers::ground(f.space.n_modes);
  const CovarianceMatrix init =
      opts.init ? *opts.init : number_state_covariance(f.space, ground);
  ExtremumResult best = solve_consistency(f, ground, init, opts);
  if (opts.scan_excited) {
    for (int k = 0; k < f.space.n_modes; ++k) {
      std::vector<int> n(static_cast<std::size_t>(f.space.n_modes), 0);
      n[static_cast<std::size_t>(k)] = 1;
      const QuantumNumbers qn(n);
      SolveOptions excited = opts;
      excited.init.reset();
      ExtremumResult r =
          solve_consistency(f, qn, number_state_covariance(f.space, qn), excited);
      if (r.value < best.value) best = r;
    }
  }
  return best;
}

UncertaintyFunctional make_trace_functional(const PhaseSpace& space, Eigen::MatrixXd a,
                                            std::string label) {
  validate(space);
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw DimensionError("make_trace_functional: coefficient matrix must be 2N x 2N");
  a = 0.5 * (a + a.transpose().eval());
  const int dim = space.dim();
  MomentGradient g(moment_count(space));
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = mu; nu < dim; ++nu)
      g[moment_index(dim, mu, nu)] = (mu == nu) ? a(mu, mu) : 2.0 * a(mu, nu);

  return UncertaintyFunctional{
      space, std::move(label),
      [a](const CovarianceMatrix& c) { return (a * c.matrix()).trace(); },
      [g](const CovarianceMatrix&) { return g; }};
}

UncertaintyFunctional make_det_functional(const PhaseSpace& space) {
  validate(space);
  const int dim = space.dim();
  return UncertaintyFunctional{
      space, "det",
      [](const CovarianceMatrix& c) { return c.matrix().determinant(); },
      [dim](const CovarianceMatrix& c) {
        const double det = c.matrix().determinant();
        const Eigen::MatrixXd inv = c.matrix().inverse();
        MomentGradient g(moment_count(c.space()));
        for (int mu = 0; mu < dim; ++mu)
          for (int nu = mu; nu < dim; ++nu)
            g[moment_index(dim, mu, nu)] = (mu == nu ? 1.0 : 2.0) * det * inv(mu, nu);
        return g;
      }};
}

UncertaintyFunctional make_evaluate_only(const PhaseSpace& space,
                                         std::function<double(const CovarianceMatrix&)> fn,
                                         std::string label) {
  validate(space);
  return UncertaintyFunctional{space, std::move(label), std::move(fn), nullptr};
}

}  // namespace uncert
