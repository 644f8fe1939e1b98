#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "vpt/error.hpp"
#include "vpt/oracle.hpp"
#include "vpt/series.hpp"
#include "vpt/variational.hpp"

using namespace vpt;

namespace {

// Sinc-DVR on a uniform grid: a discretization unrelated to the oscillator basis.
double dvr_ground_state(double g, double omega, int n) {
  const double reach = 2.0 * std::max(std::sqrt(20.0 / omega), std::pow(20.0 / std::max(g, 1e-12), 0.25));
  const double L = std::min(reach, 12.0 / std::sqrt(omega));
  const double dx = 2 * L / (n - 1);
  Eigen::MatrixXd H(n, n);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    const double x = -L + i * dx;
    for (int j = 0; j < n; ++j) {
      const int d = i - j;
      H(i, j) = d == 0 ? pi2 / (6 * dx * dx) : ((d % 2) ? -1.0 : 1.0) / (dx * dx * d * d);
    }
    H(i, i) += 0.5 * omega * omega * x * x + g * x * x * x * x;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST_CASE("free oscillator is exact") {
  CHECK(exact_energy(0.0, 1.0) == 0.5);
  CHECK(exact_energy(0.0, 3.0) == 1.5);
  CHECK(ground_state_energy(0.0, 1.0, 4) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("agrees with an independent grid discretization") {
  for (double g : {0.1, 1.0, 1000.0}) {
    INFO("g = " << g);
    CHECK(exact_energy(g, 1.0) == doctest::Approx(dvr_ground_state(g, 1.0, 301)).epsilon(1e-10));
  }
  CHECK(exact_energy(0.4, 2.5) == doctest::Approx(dvr_ground_state(0.4, 2.5, 301)).epsilon(1e-10));
}

TEST_CASE("frozen reference values") {
  CHECK(exact_energy(0.1, 1.0) == doctest::Approx(0.559146327183528).epsilon(1e-12));
  CHECK(exact_energy(1.0, 1.0) == doctest::Approx(0.803770651234090).epsilon(1e-12));
  CHECK(exact_energy(1000.0, 1.0) == doctest::Approx(6.694220850500332).epsilon(1e-12));
}

TEST_CASE("Rayleigh-Ritz monotonicity in the basis size") {
  for (double g : {0.1, 10.0}) {
    double prev = ground_state_energy(g, 1.0, 2);
    for (int n : {4, 8, 16, 32}) {
      const double e = ground_state_energy(g, 1.0, n);
      CHECK(e <= prev * (1 + 1e-13));
      prev = e;
    }
  }
  const auto rows = convergence_report(1.0, 1.0, {4, 8, 16, 32});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].delta == 0.0);
  CHECK(std::abs(rows[3].delta) < std::abs(rows[1].delta));
  CHECK_THROWS_AS(convergence_report(1.0, 1.0, {8, 4}), DomainError);
}

TEST_CASE("basis doubling is stable") {
  for (double g : {0.1, 1.0, 1000.0}) {
    OracleConfig a, b;
    b.basis_size = 2 * a.basis_size;
    CHECK(exact_energy(g, 1.0, b) == doctest::Approx(exact_energy(g, 1.0, a)).epsilon(1e-10));
  }
}

TEST_CASE("physical invariants") {
  const auto w1 = build_reexpansion(PerturbationSeries::anharmonic_oscillator(1), 1);
  double prev = 0.5;
  for (double g : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double e = exact_energy(g, 1.0);
    CHECK(e > prev);                                   // increasing in g
    CHECK(e <= evaluate(w1, g).value.real() + 1e-14);  // first order is the Gaussian variational bound
    prev = e;
  }
  CHECK(exact_energy(8.0, 2.0) == doctest::Approx(2.0 * exact_energy(1.0, 1.0)).epsilon(1e-10));
  // Strong coupling: E / g^(1/3) -> 0.667986...
  CHECK(exact_energy(1e6, 1.0) / 100.0 == doctest::Approx(0.667986259).epsilon(1e-5));
}

TEST_CASE("argument errors and the size cap") {
  CHECK_THROWS_AS(exact_energy(-0.1, 1.0), DomainError);
  CHECK_THROWS_AS(exact_energy(0.1, 0.0), DomainError);
  OracleConfig tiny;
  tiny.basis_size = 2;
  tiny.max_basis_size = 4;
  tiny.rel_tol = 1e-15;
  CHECK_THROWS_AS(exact_energy(10.0, 1.0, tiny), ConvergenceError);
}
