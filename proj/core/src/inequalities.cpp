#include "uncert/inequalities.hpp"

#include <cmath>
#include <utility>

#include "uncert/errors.hpp"
#include "uncert/symplectic.hpp"

namespace uncert {

namespace {

// Gradient slot of a local moment of mode k inside a MomentGradient.
struct LocalSlots {
  int x, y, w;
};

LocalSlots slots(int dim, int k) {
  return {moment_index(dim, 2 * k, 2 * k), moment_index(dim, 2 * k + 1, 2 * k + 1),
          moment_index(dim, 2 * k, 2 * k + 1)};
}

double sq(double v) { return v * v; }

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConstraintError(std::string(name) + " must be positive");
}

}  // namespace

EPROperatorSet epr_from_abc(double a, double b, double c) {
  require_positive(a, "epr_from_abc: a");
  require_positive(b, "epr_from_abc: b");
  if (4.0 * a * b < c * c)
    throw ConstraintError("epr_from_abc: parameters must satisfy 4ab >= c^2");
  const double ra = std::sqrt(a);
  const double first = c / (2.0 * ra);
  const double second = std::sqrt(std::max(0.0, b - c * c / (4.0 * a)));
  EPROperatorSet set;
  set.alpha1 = ra;
  set.alpha2 = 0.0;
  set.beta1 = first;
  set.beta2 = second;
  set.gamma1 = ra;
  set.gamma2 = 0.0;
  set.delta1 = first;
  set.delta2 = second;
  return set;
}

double epr_variance(const Eigen::VectorXd& coeffs, const CovarianceMatrix& c) {
  if (coeffs.size() != c.dim())
    throw DimensionError("epr_variance: coefficient vector does not match the covariance");
  return coeffs.dot(c.matrix() * coeffs);
}

InequalitySpec detrs_spec(int n_modes, double hbar) {
  if (n_modes < 1) throw ConstraintError("detrs: n_modes must be >= 1");
  require_positive(hbar, "detrs: hbar");
  InequalitySpec spec;
  spec.label = "detrs";
  spec.arity = n_modes;
  spec.functional = make_det_functional(PhaseSpace{n_modes, hbar});
  spec.functional.label = "detrs";
  spec.bound = std::pow(0.5 * hbar, 2 * n_modes);
  spec.params = {{"modes", static_cast<double>(n_modes)}};
  return spec;
}

InequalitySpec robdof_spec(double hbar) {
  require_positive(hbar, "robdof: hbar");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "robdof",
      [](const CovarianceMatrix& c) {
        const double r1 = c.variance_p(0) * c.variance_q(0) - sq(c.covariance_pq(0));
        const double r2 = c.variance_p(1) * c.variance_q(1) - sq(c.covariance_pq(1));
        return r1 * r2;
      },
      [dim](const CovarianceMatrix& c) {
        const double r1 = c.variance_p(0) * c.variance_q(0) - sq(c.covariance_pq(0));
        const double r2 = c.variance_p(1) * c.variance_q(1) - sq(c.covariance_pq(1));
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = c.variance_q(0) * r2;
        g[s0.y] = c.variance_p(0) * r2;
        g[s0.w] = -2.0 * c.covariance_pq(0) * r2;
        g[s1.x] = c.variance_q(1) * r1;
        g[s1.y] = c.variance_p(1) * r1;
        g[s1.w] = -2.0 * c.covariance_pq(1) * r1;
        return g;
      }};
  InequalitySpec spec;
  spec.label = "robdof";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = std::pow(0.5 * hbar, 4);
  return spec;
}

InequalitySpec prodcov_spec(double hbar) {
  require_positive(hbar, "prodcov: hbar");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "prodcov",
      [](const CovarianceMatrix& c) {
        return c.variance_p(0) * c.variance_q(0) * c.variance_p(1) * c.variance_q(1) -
               sq(c.covariance_pq(0)) * sq(c.covariance_pq(1));
      },
      [dim](const CovarianceMatrix& c) {
        const double x1 = c.variance_p(0), y1 = c.variance_q(0), w1 = c.covariance_pq(0);
        const double x2 = c.variance_p(1), y2 = c.variance_q(1), w2 = c.covariance_pq(1);
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = y1 * x2 * y2;
        g[s0.y] = x1 * x2 * y2;
        g[s0.w] = -2.0 * w1 * sq(w2);
        g[s1.x] = x1 * y1 * y2;
        g[s1.y] = x1 * y1 * x2;
        g[s1.w] = -2.0 * sq(w1) * w2;
        return g;
      }};
  InequalitySpec spec;
  spec.label = "prodcov";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = std::pow(0.5 * hbar, 4);
  return spec;
}

InequalitySpec prodrs_spec(double hbar) {
  require_positive(hbar, "prodrs: hbar");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "prodrs",
      [](const CovarianceMatrix& c) {
        return std::sqrt(c.variance_p(0) * c.variance_q(0) * c.variance_p(1) *
                         c.variance_q(1));
      },
      [dim](const CovarianceMatrix& c) {
        const double v = std::sqrt(c.variance_p(0) * c.variance_q(0) * c.variance_p(1) *
                                   c.variance_q(1));
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = 0.5 * v / c.variance_p(0);
        g[s0.y] = 0.5 * v / c.variance_q(0);
        g[s1.x] = 0.5 * v / c.variance_p(1);
        g[s1.y] = 0.5 * v / c.variance_q(1);
        return g;
      }};
  InequalitySpec spec;
  spec.label = "prodrs";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = sq(0.5 * hbar);
  return spec;
}

InequalitySpec mixedprod_spec(double a, double b, int n, double hbar) {
  require_positive(a, "mixedprod: a");
  require_positive(b, "mixedprod: b");
  require_positive(hbar, "mixedprod: hbar");
  if (n < 1) throw ConstraintError("mixedprod: n must be >= 1");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "mixedprod",
      [a, b, n](const CovarianceMatrix& c) {
        return a * std::pow(c.variance_p(0) * c.variance_q(1), n) +
               b * std::pow(c.variance_p(1) * c.variance_q(0), n);
      },
      [a, b, n, dim](const CovarianceMatrix& c) {
        const double x1 = c.variance_p(0), y1 = c.variance_q(0);
        const double x2 = c.variance_p(1), y2 = c.variance_q(1);
        const double pa = a * n * std::pow(x1 * y2, n - 1);
        const double pb = b * n * std::pow(x2 * y1, n - 1);
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = pa * y2;
        g[s0.y] = pb * x2;
        g[s1.x] = pb * y1;
        g[s1.y] = pa * x1;
        return g;
      }};
  InequalitySpec spec;
  spec.label = "mixedprod";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = 2.0 * std::sqrt(a * b) * std::pow(0.5 * hbar, 2 * n);
  spec.params = {{"a", a}, {"b", b}, {"n", static_cast<double>(n)}};
  spec.route = MinimizeRoute::Product;
  return spec;
}

namespace {

Eigen::Matrix4d corineq_coefficients(double a, double b, double c) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = b;
  m(0, 2) = m(2, 0) = 0.5 * c;
  m(1, 3) = m(3, 1) = -0.5 * c;
  return m;
}

}  // namespace

InequalitySpec corineq_spec(double a, double b, double c, double hbar) {
  require_positive(a, "corineq: a");
  require_positive(b, "corineq: b");
  require_positive(hbar, "corineq: hbar");
  if (4.0 * a * b <= c * c)
    throw ConstraintError("corineq: parameters must satisfy 4ab > c^2");
  InequalitySpec spec;
  spec.label = "corineq";
  spec.arity = 2;
  spec.functional =
      make_trace_functional(PhaseSpace{2, hbar}, corineq_coefficients(a, b, c), "corineq");
  spec.bound = hbar * std::sqrt(sq(a + b) - sq(c));
  spec.separable_bound = (a + b) * hbar;
  spec.params = {{"a", a}, {"b", b}, {"c", c}};
  return spec;
}

InequalitySpec fourepr_spec(double a, double b, double c, double hbar) {
  require_positive(hbar, "fourepr: hbar");
  if (4.0 * a * b <= c * c)
    throw ConstraintError("fourepr: parameters must satisfy 4ab > c^2");
  const EPROperatorSet set = epr_from_abc(a, b, c);
  const PhaseSpace space{2, hbar};
  Eigen::Matrix4d k = set.u1() * set.u1().transpose() + set.u2() * set.u2().transpose() +
                      set.v1() * set.v1().transpose() + set.v2() * set.v2().transpose();
  UncertaintyFunctional f = make_trace_functional(space, k, "fourepr");
  // route the evaluation through the operator variances
  f.evaluate = [set](const CovarianceMatrix& cm) {
    return epr_variance(set.u1(), cm) + epr_variance(set.u2(), cm) +
           epr_variance(set.v1(), cm) + epr_variance(set.v2(), cm);
  };
  InequalitySpec spec;
  spec.label = "fourepr";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = hbar * std::sqrt(sq(a + b) - sq(c));
  spec.separable_bound = (a + b) * hbar;
  spec.params = {{"a", a}, {"b", b}, {"c", c}};
  return spec;
}

InequalitySpec duan_spec(double a, double b, double hbar) {
  require_positive(a, "duan: a");
  require_positive(b, "duan: b");
  require_positive(hbar, "duan: hbar");
  const PhaseSpace space{2, hbar};
  Eigen::Vector4d u{std::sqrt(a), 0.0, std::sqrt(b), 0.0};
  Eigen::Vector4d v{0.0, std::sqrt(a), 0.0, -std::sqrt(b)};
  Eigen::Matrix4d k = u * u.transpose() + v * v.transpose();
  InequalitySpec spec;
  spec.label = "duan";
  spec.arity = 2;
  spec.functional = make_trace_functional(space, k, "duan");
  spec.bound = 0.0;
  spec.separable_bound = (a + b) * hbar;
  spec.params = {{"a", a}, {"b", b}};
  spec.route = MinimizeRoute::Product;
  return spec;
}

InequalitySpec sumheis_spec(double hbar) {
  require_positive(hbar, "sumheis: hbar");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "sumheis",
      [](const CovarianceMatrix& c) {
        return std::sqrt(c.variance_p(0) * c.variance_q(0)) +
               std::sqrt(c.variance_p(1) * c.variance_q(1));
      },
      [dim](const CovarianceMatrix& c) {
        const double t1 = std::sqrt(c.variance_p(0) * c.variance_q(0));
        const double t2 = std::sqrt(c.variance_p(1) * c.variance_q(1));
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = 0.5 * t1 / c.variance_p(0);
        g[s0.y] = 0.5 * t1 / c.variance_q(0);
        g[s1.x] = 0.5 * t2 / c.variance_p(1);
        g[s1.y] = 0.5 * t2 / c.variance_q(1);
        return g;
      }};
  InequalitySpec spec;
  spec.label = "sumheis";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = hbar;
  return spec;
}

InequalitySpec crossheis_spec(double hbar) {
  require_positive(hbar, "crossheis: hbar");
  const PhaseSpace space{2, hbar};
  const int dim = space.dim();
  UncertaintyFunctional f{
      space, "crossheis",
      [](const CovarianceMatrix& c) {
        return std::sqrt(c.variance_p(0) * c.variance_q(1)) +
               std::sqrt(c.variance_p(1) * c.variance_q(0));
      },
      [dim](const CovarianceMatrix& c) {
        const double t1 = std::sqrt(c.variance_p(0) * c.variance_q(1));
        const double t2 = std::sqrt(c.variance_p(1) * c.variance_q(0));
        MomentGradient g = MomentGradient::Zero(moment_count(c.space()));
        const auto s0 = slots(dim, 0), s1 = slots(dim, 1);
        g[s0.x] = 0.5 * t1 / c.variance_p(0);
        g[s0.y] = 0.5 * t2 / c.variance_q(0);
        g[s1.x] = 0.5 * t2 / c.variance_p(1);
        g[s1.y] = 0.5 * t1 / c.variance_q(1);
        return g;
      }};
  InequalitySpec spec;
  spec.label = "crossheis";
  spec.arity = 2;
  spec.functional = std::move(f);
  spec.bound = hbar;
  return spec;
}

InequalitySpec triplesep_spec(double hbar) {
  require_positive(hbar, "triplesep: hbar");
  const PhaseSpace space{3, hbar};
  // u1 = q1 + p2 + q3, u2 = q1 + q2 + p3, u3 = p1 + q2 + q3 (pairwise
  // commuting)
  Eigen::VectorXd a1(6), a2(6), a3(6);
  a1 << 0, 1, 1, 0, 0, 1;
  a2 << 0, 1, 0, 1, 1, 0;
  a3 << 1, 0, 0, 1, 0, 1;
  Eigen::MatrixXd k =
      a1 * a1.transpose() + a2 * a2.transpose() + a3 * a3.transpose();
  InequalitySpec spec;
  spec.label = "triplesep";
  spec.arity = 3;
  spec.functional = make_trace_functional(space, k, "triplesep");
  spec.bound = 0.0;
  spec.separable_bound = 3.0 * std::sqrt(2.0) * hbar;
  spec.route = MinimizeRoute::Product;
  return spec;
}

std::vector<InequalitySpec> catalog(const PhaseSpace& space) {
  validate(space);
  std::vector<InequalitySpec> entries;
  entries.push_back(detrs_spec(space.n_modes, space.hbar));
  if (space.n_modes == 2) {
    entries.push_back(robdof_spec(space.hbar));
    entries.push_back(prodcov_spec(space.hbar));
    entries.push_back(prodrs_spec(space.hbar));
    entries.push_back(mixedprod_spec(1.0, 1.0, 1, space.hbar));
    entries.push_back(corineq_spec(1.0, 1.0, 1.0, space.hbar));
    entries.push_back(fourepr_spec(1.0, 1.0, 1.0, space.hbar));
    entries.push_back(duan_spec(1.0, 1.0, space.hbar));
    entries.push_back(sumheis_spec(space.hbar));
    entries.push_back(crossheis_spec(space.hbar));
  }
  if (space.n_modes == 3) entries.push_back(triplesep_spec(space.hbar));
  return entries;
}

EvalRecord evaluate(const InequalitySpec& spec, const CovarianceMatrix& c, double tol) {
  if (c.space().n_modes != spec.arity)
    throw DimensionError("evaluate: covariance arity does not match the inequality");
  const double lhs = spec.functional.evaluate(c);
  const double margin = lhs - spec.bound;
  return EvalRecord{lhs, spec.bound, margin >= -tol, margin};
}

Verdict detect_entanglement(const CovarianceMatrix& c, const InequalitySpec& spec,
                            double tol) {
  if (!spec.separable_bound)
    throw DomainError("detect_entanglement: criterion has no separable bound");
  if (c.space().n_modes != spec.arity)
    throw DimensionError("detect_entanglement: covariance arity does not match the criterion");
  if (!is_admissible(c))
    throw DefinitenessError("detect_entanglement: covariance is not quantum-admissible",
                            c.matrix());
  const double lhs = spec.functional.evaluate(c);
  return (lhs < *spec.separable_bound - tol) ? Verdict::Entangled : Verdict::Inconclusive;
}

Verdict detect_entanglement(const CovarianceMatrix& c, const InequalitySpec& spec) {
  return detect_entanglement(c, spec, 1e-9 * c.space().hbar);
}

}  // namespace uncert
