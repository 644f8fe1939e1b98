#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vpt/error.hpp"
#include "vpt/quadrature.hpp"

using namespace vpt;

TEST_CASE("polynomials are exact on one panel") {
  const auto r = integrate([](double x) { return 3 * x * x - x + 2; }, -1.0, 2.0);
  CHECK(r.value == doctest::Approx(9.0 - 1.5 + 6.0).epsilon(1e-15));
  CHECK(r.intervals == 1);
}

TEST_CASE("smooth and peaked integrands") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 3.0).value ==
        doctest::Approx(std::exp(3.0) - 1).epsilon(1e-13));
  // Narrow Lorentzian: forces adaptive refinement.
  const double eps = 1e-4;
  const auto r = integrate([&](double x) { return eps / (x * x + eps * eps); }, -1.0, 1.0);
  CHECK(r.value == doctest::Approx(2 * std::atan(1 / eps)).epsilon(1e-12));
  CHECK(r.intervals > 10);
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("reversed and empty ranges") {
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("semi-infinite range") {
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 2.0).value ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(integrate_to_infinity([](double x) { return 1 / (1 + x * x); }, 0.0).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-11));
}

TEST_CASE("principal value against closed forms") {
  // PV int_0^1 x^2 / (x - c) = 1/2 + c + c^2 log((1 - c) / c)
  for (double c : {0.3, 0.5, 0.999, 1e-3}) {
    const auto r = principal_value([](double x) { return x * x; }, 2 * c, 0.0, 1.0, c);
    CHECK(r.value == doctest::Approx(0.5 + c + c * c * std::log((1 - c) / c)).epsilon(1e-12));
  }
  // PV int_{-1}^{1} e^x / x = 2 Shi(1)
  const auto r = principal_value([](double x) { return std::exp(x); }, 1.0, -1.0, 1.0, 0.0);
  CHECK(r.value == doctest::Approx(2.1145017507514572).epsilon(1e-12));
  CHECK_THROWS_AS(principal_value([](double x) { return x; }, 1.0, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("budget exhaustion is reported") {
  QuadratureOptions tight;
  tight.rel_tol = 1e-15;
  tight.max_intervals = 3;
  try {
    integrate([](double x) { return std::sin(1 / (x + 1e-3)); }, 0.0, 1.0, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.diagnostics()).find("exhausted") != std::string::npos);
  }
}
