#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "support.hpp"
#include "uncert/covariance.hpp"
#include "uncert/errors.hpp"
#include "uncert/inequalities.hpp"
#include "uncert/symplectic.hpp"

using namespace uncert;

TEST_CASE("CovarianceMatrix construction and accessors") {
  Eigen::Matrix4d m;
  m << 1.0, 0.1, 0.2, 0.3,
       0.1, 2.0, 0.4, 0.5,
       0.2, 0.4, 3.0, 0.6,
       0.3, 0.5, 0.6, 4.0;
  const CovarianceMatrix c(PhaseSpace{2}, m);
  CHECK(c.variance_p(0) == 1.0);
  CHECK(c.variance_q(0) == 2.0);
  CHECK(c.covariance_pq(0) == 0.1);
  CHECK(c.variance_p(1) == 3.0);
  CHECK(c.variance_q(1) == 4.0);
  CHECK(c.covariance_pq(1) == 0.6);
  CHECK(c.cross(0, 2) == 0.2);
  CHECK(c.cross(1, 3) == 0.5);
  CHECK_THROWS_AS(c.variance_p(2), DimensionError);
  CHECK_THROWS_AS(c.cross(0, 4), DimensionError);

  CHECK_THROWS_AS(CovarianceMatrix(PhaseSpace{1}, m), DimensionError);
  Eigen::Matrix2d asym;
  asym << 1.0, 0.2, -0.2, 1.0;
  CHECK_THROWS_AS(CovarianceMatrix(PhaseSpace{1}, asym), DimensionError);
}

TEST_CASE("admissibility") {
  SUBCASE("vacuum is boundary-admissible for any N") {
    for (int n : {1, 2, 3}) {
      const PhaseSpace space{n};
      const CovarianceMatrix c(space, 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n));
      CHECK(is_admissible(c, 1e-9));
      CHECK(on_boundary(c, 1e-9));
    }
  }

  SUBCASE("quarter-hbar identity violates the relation") {
    const CovarianceMatrix c(PhaseSpace{1}, 0.25 * Eigen::MatrixXd::Identity(2, 2));
    CHECK_FALSE(is_admissible(c, 1e-9));
  }

  SUBCASE("squeezed thermal state") {
    const Eigen::Matrix2d m = Eigen::Vector2d(std::exp(-1.0), std::exp(1.0)).asDiagonal();
    const CovarianceMatrix c(PhaseSpace{1}, m);
    CHECK(is_admissible(c, 1e-9));      // symplectic eigenvalue sqrt(det) = 1 = hbar
    CHECK_FALSE(is_pure_gaussian(c, 1e-9));
  }

  SUBCASE("non-positive-definite input is rejected") {
    const CovarianceMatrix c(PhaseSpace{1}, -Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(is_admissible(c, 1e-9), DefinitenessError);
  }
}

TEST_CASE("is_pure_gaussian") {
  const PhaseSpace space{1};
  CHECK(is_pure_gaussian(CovarianceMatrix(space, 0.5 * Eigen::Matrix2d::Identity()), 1e-9));
  // number state n = 1: admissible but not minimal
  const CovarianceMatrix number(space, 1.5 * Eigen::Matrix2d::Identity());
  CHECK(is_admissible(number, 1e-9));
  CHECK_FALSE(is_pure_gaussian(number, 1e-9));

  // congruence with a random symplectic preserves purity
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    const PhaseSpace sp{n};
    for (int rep = 0; rep < 10; ++rep) {
      const CovarianceMatrix c = testsupport::random_pure_covariance(sp, rng);
      CHECK(is_pure_gaussian(c, 1e-9));
      CHECK(on_boundary(c, 1e-9));
    }
  }
}

TEST_CASE("number_state_covariance") {
  const PhaseSpace space{2, 1.0};
  SUBCASE("ground state") {
    const CovarianceMatrix c = number_state_covariance(space, QuantumNumbers::ground(2));
    CHECK((c.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("single mode n = 1") {
    const CovarianceMatrix c =
        number_state_covariance(PhaseSpace{1}, QuantumNumbers({1}));
    CHECK((c.matrix() - 1.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("determinant closed form") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> occ(0, 4);
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<int> n = {occ(rng), occ(rng)};
      const CovarianceMatrix c = number_state_covariance(space, QuantumNumbers(n));
      double expected = 1.0;
      for (int v : n) expected *= (v + 0.5) * (v + 0.5);
      CHECK(c.matrix().determinant() == doctest::Approx(expected).epsilon(1e-12));
      CHECK(is_admissible(c, 1e-10));
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(number_state_covariance(space, QuantumNumbers({1})), DimensionError);
    CHECK_THROWS_AS(QuantumNumbers({-1, 0}), DomainError);
  }
}

TEST_CASE("squeezed_number_triple") {
  SUBCASE("vacuum") {
    const MomentTriple t = squeezed_number_triple(0, 0.0, 0.0, 1.0);
    CHECK(t.u == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.v == 0.0);
    CHECK(t.w == 0.0);
  }
  SUBCASE("sheet relation for n = 2") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> rho(0.0, 3.0), theta(-3.2, 3.2);
    for (int rep = 0; rep < 50; ++rep) {
      const MomentTriple t = squeezed_number_triple(2, rho(rng), theta(rng), 1.0);
      const double e2 = 2.5;
      CHECK(std::abs(t.u * t.u - t.v * t.v - t.w * t.w - e2 * e2) <= 1e-12 * e2 * e2);
    }
  }
  SUBCASE("rho = ln 2") {
    const MomentTriple t = squeezed_number_triple(0, std::log(2.0), 0.0, 1.0);
    CHECK(t.u == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    CHECK(t.v == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
    CHECK(std::abs(t.w) < 1e-15);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(squeezed_number_triple(-1, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(squeezed_number_triple(0, -0.5, 0.0), DomainError);
  }
}

TEST_CASE("triple and covariance conversions") {
  SUBCASE("vacuum") {
    const CovarianceMatrix c(PhaseSpace{1}, 0.5 * Eigen::Matrix2d::Identity());
    const MomentTriple t = triple_from_covariance(c);
    CHECK(t.u == doctest::Approx(0.5));
    CHECK(t.v == 0.0);
    CHECK(t.w == 0.0);
    const CovarianceMatrix back = covariance_from_triple(t, 1.0);
    CHECK((back.matrix() - c.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("diag(1, 4)") {
    const Eigen::Matrix2d m = Eigen::Vector2d(1.0, 4.0).asDiagonal();
    const MomentTriple t = triple_from_covariance(CovarianceMatrix(PhaseSpace{1}, m));
    CHECK(t.u == doctest::Approx(2.5));
    CHECK(t.v == doctest::Approx(-1.5));
    CHECK(t.w == 0.0);
  }
  SUBCASE("round trip on random admissible triples") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 50; ++rep) {
      const CovarianceMatrix c =
          testsupport::random_admissible_covariance(PhaseSpace{1}, rng);
      const MomentTriple t = triple_from_covariance(c);
      const CovarianceMatrix back = covariance_from_triple(t, 1.0);
      CHECK((back.matrix() - c.matrix()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("unphysical triples are rejected") {
    CHECK_THROWS_AS(covariance_from_triple({1.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(covariance_from_triple({-1.0, 0.0, 0.0}), DomainError);
  }
}

TEST_CASE("superposition_0M_variance") {
  CHECK(superposition_0M_variance(2, 0.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(superposition_0M_variance(2, 0.8) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(superposition_0M_variance(3, 0.5, 2.0) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK_THROWS_AS(superposition_0M_variance(1, 0.1), DomainError);
  CHECK_THROWS_AS(superposition_0M_variance(2, -0.1), DomainError);
  // above the cap the displayed value would drop below hbar/2
  CHECK_THROWS_AS(superposition_0M_variance(2, 0.9), DomainError);
  CHECK_THROWS_AS(superposition_0M_variance(2, 1.1), DomainError);
}

TEST_CASE("two_mode_squeezed_covariance") {
  SUBCASE("r = 0 is the vacuum") {
    const CovarianceMatrix c = two_mode_squeezed_covariance(0.0);
    CHECK((c.matrix() - 0.5 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("pure for any r") {
    for (double r : {-1.0, 0.3, 0.7, 1.5}) {
      CHECK(is_pure_gaussian(two_mode_squeezed_covariance(r), 1e-9));
    }
  }
  SUBCASE("EPR combination squeezed to 2 hbar e^{-2r}") {
    const double r = 1.0;
    const CovarianceMatrix c = two_mode_squeezed_covariance(r);
    Eigen::VectorXd qdiff(4), psum(4);
    qdiff << 0.0, 1.0, 0.0, -1.0;  // q1 - q2
    psum << 1.0, 0.0, 1.0, 0.0;    // p1 + p2
    const double lhs = epr_variance(qdiff, c) + epr_variance(psum, c);
    CHECK(lhs == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
  }
}
