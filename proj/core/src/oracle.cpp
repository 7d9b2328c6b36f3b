#include "uncert/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <thread>
#include <vector>

#include "uncert/errors.hpp"

namespace uncert {

namespace {

constexpr int kLayers = 2;
constexpr double kMaxParam = 16.0;
constexpr int kMaxSweeps = 60;

int pair_count(int n) { return n * (n - 1) / 2; }

int param_count(int n_modes) {
  return kLayers * (2 * n_modes + pair_count(n_modes)) + n_modes;
}

void apply_rotation_rows(Eigen::MatrixXd& s, int k, double theta) {
  const double c = std::cos(theta), sn = std::sin(theta);
  const Eigen::RowVectorXd rp = s.row(2 * k);
  const Eigen::RowVectorXd rq = s.row(2 * k + 1);
  s.row(2 * k) = c * rp - sn * rq;
  s.row(2 * k + 1) = sn * rp + c * rq;
}

void apply_squeeze_rows(Eigen::MatrixXd& s, int k, double r) {
  s.row(2 * k) *= std::exp(-r);
  s.row(2 * k + 1) *= std::exp(r);
}

// Beamsplitter-style mixer: identical rotation applied to (p_j, p_k) and
// to (q_j, q_k), which keeps the matrix symplectic.
void apply_mixer_rows(Eigen::MatrixXd& s, int j, int k, double chi) {
  const double c = std::cos(chi), sn = std::sin(chi);
  for (int off = 0; off < 2; ++off) {
    const Eigen::RowVectorXd rj = s.row(2 * j + off);
    const Eigen::RowVectorXd rk = s.row(2 * k + off);
    s.row(2 * j + off) = c * rj + sn * rk;
    s.row(2 * k + off) = -sn * rj + c * rk;
  }
}

Eigen::MatrixXd circuit_symplectic(int n_modes, const Eigen::VectorXd& params) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  int idx = 0;
  for (int layer = 0; layer < kLayers; ++layer) {
    for (int k = 0; k < n_modes; ++k) apply_rotation_rows(s, k, params[idx++]);
    for (int k = 0; k < n_modes; ++k) apply_squeeze_rows(s, k, params[idx++]);
    for (int j = 0; j < n_modes; ++j)
      for (int k = j + 1; k < n_modes; ++k) apply_mixer_rows(s, j, k, params[idx++]);
  }
  for (int k = 0; k < n_modes; ++k) apply_rotation_rows(s, k, params[idx++]);
  return s;
}

struct Objective {
  const UncertaintyFunctional* f;

  double operator()(const Eigen::VectorXd& params) const {
    const Eigen::MatrixXd s = circuit_symplectic(f->space.n_modes, params);
    Eigen::MatrixXd c = 0.5 * f->space.hbar * (s * s.transpose());
    c = 0.5 * (c + c.transpose().eval());
    return f->evaluate(CovarianceMatrix(f->space, c));
  }
};

// Minimizes g along coordinate j starting from x. Brackets a descent
// direction by geometric expansion, then contracts by golden section.
// Returns the achieved value and updates x in place.
double line_minimize(const Objective& g, Eigen::VectorXd& x, int j, double f0) {
  constexpr double kGolden = 0.6180339887498949;
  double step = 0.25;
  double best = f0, s_best = 0.0;

  // find a downhill step in either direction, shrinking if necessary
  for (int shrink = 0; shrink < 3 && s_best == 0.0; ++shrink) {
    for (const double dir : {+1.0, -1.0}) {
      Eigen::VectorXd probe = x;
      probe[j] = x[j] + dir * step;
      const double fv = g(probe);
      if (fv < best) {
        best = fv;
        s_best = dir * step;
      }
    }
    if (s_best == 0.0) step *= 0.2;
  }
  if (s_best == 0.0) return f0;

  // expand while the objective keeps dropping
  double lo = 0.0, hi = s_best;
  double f_hi = best;
  while (std::abs(hi) < kMaxParam) {
    Eigen::VectorXd probe = x;
    probe[j] = x[j] + 2.0 * hi;
    const double fv = g(probe);
    if (fv >= f_hi) break;
    lo = hi;
    hi *= 2.0;
    f_hi = fv;
  }
  double far = 2.0 * hi;

  // golden-section contraction on [lo, far]
  double a = lo, b = far;
  double m1 = a + (1.0 - kGolden) * (b - a);
  double m2 = a + kGolden * (b - a);
  auto eval_at = [&](double s) {
    Eigen::VectorXd probe = x;
    probe[j] = x[j] + s;
    return g(probe);
  };
  double f1 = eval_at(m1), f2 = eval_at(m2);
  for (int it = 0; it < 40 && std::abs(b - a) > 1e-10 * (1.0 + std::abs(a) + std::abs(b));
       ++it) {
    if (f1 <= f2) {
      b = m2;
      m2 = m1;
      f2 = f1;
      m1 = a + (1.0 - kGolden) * (b - a);
      f1 = eval_at(m1);
    } else {
      a = m1;
      m1 = m2;
      f1 = f2;
      m2 = a + kGolden * (b - a);
      f2 = eval_at(m2);
    }
  }
  const double s_final = (f1 <= f2) ? m1 : m2;
  const double f_final = std::min(f1, f2);
  if (f_final < f0) {
    x[j] += s_final;
    return f_final;
  }
  return f0;
}

struct RestartResult {
  double value;
  Eigen::VectorXd params;
};

RestartResult run_restart(const Objective& g, int n_modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-1.5, 1.5);

  const int np = param_count(n_modes);
  Eigen::VectorXd x(np);
  int idx = 0;
  for (int layer = 0; layer < kLayers; ++layer) {
    for (int k = 0; k < n_modes; ++k) x[idx++] = angle(rng);
    for (int k = 0; k < n_modes; ++k) x[idx++] = squeeze(rng);
    for (int p = 0; p < pair_count(n_modes); ++p) x[idx++] = angle(rng);
  }
  for (int k = 0; k < n_modes; ++k) x[idx++] = angle(rng);

  double value = g(x);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int stalled = 0;
  for (int sweep = 0; sweep < kMaxSweeps && stalled < 2; ++sweep) {
    const double before = value;
    for (int j = 0; j < np; ++j) value = line_minimize(g, x, j, value);
    // a few random directions to escape axis-aligned flats
    for (int d = 0; d < 4; ++d) {
      Eigen::VectorXd dir(np);
      for (int j = 0; j < np; ++j) dir[j] = unit(rng);
      dir.normalize();
      constexpr double kGolden = 0.6180339887498949;
      double a = -2.0, b = 2.0;
      auto eval_at = [&](double s) { return g(x + s * dir); };
      double m1 = a + (1.0 - kGolden) * (b - a);
      double m2 = a + kGolden * (b - a);
      double f1 = eval_at(m1), f2 = eval_at(m2);
      for (int it = 0; it < 30; ++it) {
        if (f1 <= f2) {
          b = m2;
          m2 = m1;
          f2 = f1;
          m1 = a + (1.0 - kGolden) * (b - a);
          f1 = eval_at(m1);
        } else {
          a = m1;
          m1 = m2;
          f1 = f2;
          m2 = a + kGolden * (b - a);
          f2 = eval_at(m2);
        }
      }
      const double s_final = (f1 <= f2) ? m1 : m2;
      const double f_final = std::min(f1, f2);
      if (f_final < value) {
        x += s_final * dir;
        value = f_final;
      }
    }
    if (before - value <= 1e-13 * (1.0 + std::abs(before)))
      ++stalled;
    else
      stalled = 0;
  }
  return {value, x};
}

std::uint64_t derive_seed(std::uint64_t seed, int restart) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(restart + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

BruteForceResult brute_force_minimize(const UncertaintyFunctional& f, int restarts,
                                      std::uint64_t seed) {
  validate(f.space);
  if (restarts < 1) throw DomainError("brute_force_minimize: restarts must be >= 1");

  const Objective g{&f};
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_threads = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(restarts)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < restarts; i = next.fetch_add(1))
      results[static_cast<std::size_t>(i)] = run_restart(g, f.space.n_modes, derive_seed(seed, i));
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int best = 0;
  for (int i = 1; i < restarts; ++i)
    if (results[static_cast<std::size_t>(i)].value < results[static_cast<std::size_t>(best)].value)
      best = i;

  const Eigen::MatrixXd s =
      circuit_symplectic(f.space.n_modes, results[static_cast<std::size_t>(best)].params);
  Eigen::MatrixXd c = 0.5 * f.space.hbar * (s * s.transpose());
  c = 0.5 * (c + c.transpose().eval());
  return {results[static_cast<std::size_t>(best)].value, CovarianceMatrix(f.space, c)};
}

Eigen::MatrixXd random_symplectic(const PhaseSpace& space, std::mt19937_64& rng,
                                  double max_squeeze) {
  validate(space);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> squeeze(-max_squeeze, max_squeeze);
  const int np = param_count(space.n_modes);
  Eigen::VectorXd x(np);
  int idx = 0;
  for (int layer = 0; layer < kLayers; ++layer) {
    for (int k = 0; k < space.n_modes; ++k) x[idx++] = angle(rng);
    for (int k = 0; k < space.n_modes; ++k) x[idx++] = squeeze(rng);
    for (int p = 0; p < pair_count(space.n_modes); ++p) x[idx++] = angle(rng);
  }
  for (int k = 0; k < space.n_modes; ++k) x[idx++] = angle(rng);
  return circuit_symplectic(space.n_modes, x);
}

}  // namespace uncert
