#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "vpt/dispersion.hpp"
#include "vpt/error.hpp"

using namespace vpt;
constexpr double kPi = std::numbers::pi;

namespace {

// Composite Simpson in u = omega^3 / (3 lambda) for
//   (-1)^k / pi int_0^gc Im E(-lambda) lambda^-(k+1) dlambda  (omega = 1).
double simpson_moment(int k, double gc, int truncation) {
  const auto& c = oscillator_rate_corrections();
  auto integrand = [&](double u) {
    double corr = 1.0;
    for (int i = 1; i <= truncation; ++i) corr += c[i - 1] * std::pow(u, -i);
    const double im = -std::sqrt(6.0 / kPi) * std::sqrt(u) * std::exp(-u) * corr;
    return im * std::pow(3 * u, k + 1) / (3 * u * u);
  };
  const double a = 1.0 / (3.0 * gc), b = a + 80.0 + 4.0 * k;
  const int n = 200000;
  const double h = (b - a) / n;
  double s = integrand(a) + integrand(b);
  for (int i = 1; i < n; ++i) s += integrand(a + i * h) * (i % 2 ? 4 : 2);
  return (k % 2 ? -1.0 : 1.0) / kPi * s * h / 3;
}

const PerturbationSeries& series4() {
  static const auto s = PerturbationSeries::anharmonic_oscillator(4);
  return s;
}

}  // namespace

TEST_CASE("semiclassical discontinuity") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  const double lam = 0.1, u = 1 / 0.3;
  CHECK(semiclassical_disc(lam, m) == doctest::Approx(-std::sqrt(6 / kPi) * std::sqrt(u) * std::exp(-u)).epsilon(1e-15));
  const auto m1 = DiscontinuityModel::anharmonic_oscillator(1.0, 1);
  CHECK(semiclassical_disc(lam, m1) / semiclassical_disc(lam, m) == doctest::Approx(1 - 95.0 / 72 * 0.3));
  CHECK(semiclassical_disc(1e-4, m) == 0.0);  // underflows, never positive
  CHECK_THROWS_AS(semiclassical_disc(0.0, m), DomainError);
  CHECK_THROWS_AS(DiscontinuityModel::anharmonic_oscillator(1.0, 7), DomainError);
}

TEST_CASE("incomplete gamma, including negative order") {
  for (double x : {0.01, 0.5, 3.0, 40.0}) {
    CHECK(upper_incomplete_gamma(2.5, x) == doctest::Approx(boost::math::tgamma(2.5, x)).epsilon(1e-14));
    // Gamma(-1/2, x) = 2 (e^-x / sqrt x - sqrt(pi) erfc(sqrt x))
    const double ref = 2 * (std::exp(-x) / std::sqrt(x) - std::sqrt(kPi) * boost::math::erfc(std::sqrt(x)));
    CHECK(upper_incomplete_gamma(-0.5, x) == doctest::Approx(ref).epsilon(1e-12));
    // Gamma(a+1, x) = a Gamma(a, x) + x^a e^-x
    for (double a : {-3.5, -2.5, -1.5}) {
      CHECK(upper_incomplete_gamma(a + 1, x) ==
            doctest::Approx(a * upper_incomplete_gamma(a, x) + std::pow(x, a) * std::exp(-x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("truncated moments against an independent Simpson rule") {
  for (int trunc : {0, 2}) {
    const auto m = DiscontinuityModel::anharmonic_oscillator(1.0, trunc);
    for (double gc : {0.02, 0.1, 1.0}) {
      for (int k = 0; k <= 6; ++k) {
        INFO("trunc " << trunc << " gc " << gc << " k " << k);
        CHECK(moment_truncated(k, gc, m) == doctest::Approx(simpson_moment(k, gc, trunc)).epsilon(1e-9));
        CHECK(moment_truncated_quadrature(k, gc, m) == doctest::Approx(moment_truncated(k, gc, m)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("full moments reproduce the large-order law") {
  const auto lead = DiscontinuityModel::anharmonic_oscillator(1.0, 0);
  const auto one = DiscontinuityModel::anharmonic_oscillator(1.0, 1);
  const auto p = LargeOrderParams::anharmonic_oscillator();
  for (int k = 1; k <= 12; ++k) {
    const double a = asymptotic_coefficient(k, p, false);
    CHECK(moment_full(k, lead) == doctest::Approx(a).epsilon(1e-13));
    // The first correction contributes Gamma(k - 1/2) / Gamma(k + 1/2) = 1 / (k - 1/2).
    CHECK(moment_full(k, one) == doctest::Approx(a * (1 - 95.0 / 72 / (k - 0.5))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(moment_full(2, DiscontinuityModel::anharmonic_oscillator(1.0, 3)), DomainError);
  // The whole cut is the sum of its two pieces.
  CHECK(moment_truncated(4, 1e6, lead) == doctest::Approx(moment_full(4, lead)).epsilon(1e-12));
}

TEST_CASE("subtract_tip") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  const auto sub = subtract_tip(series4(), 0.07, m);
  for (int k = 0; k <= 4; ++k) CHECK(sub.coefficients[k] == series4().coefficients[k] - moment_truncated(k, 0.07, m));
  CHECK_FALSE(sub.has_exact());
  // Dimensionless convention: the same cut-off in units of omega^3 gives the same E'.
  const auto s2 = PerturbationSeries::anharmonic_oscillator(4, 2.0);
  const auto sub2 = subtract_tip(s2, 0.07 * 8, DiscontinuityModel::anharmonic_oscillator(2.0));
  for (int k = 0; k <= 4; ++k) CHECK(sub2.coefficients[k] == doctest::Approx(sub.coefficients[k]).epsilon(1e-13));
}

TEST_CASE("fixed point N=1") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  const auto t = fixed_point_cutoff(1, series4(), m);
  CHECK(t.converged);
  CHECK(t.cutoffs.size() < 100);
  CHECK(t.cutoffs.front() == doctest::Approx(1 / (9 * std::sqrt(3.0))).epsilon(1e-12));
  CHECK(t.cutoff() == doctest::Approx(0.0661475885).epsilon(1e-8));
  CHECK(cutoff_map(1, series4(), m, t.cutoff()) == doctest::Approx(t.cutoff()).epsilon(1e-9));
  const double expected[] = {0.50117, 0.72905, -2.24059, 13.54295, -98.64571};
  for (int k = 0; k < 5; ++k) CHECK(t.final_coefficients()[k] == doctest::Approx(expected[k]).epsilon(5e-3));
  // The cut-off moves monotonically towards its limit.
  for (std::size_t i = 1; i < t.cutoffs.size(); ++i) CHECK(t.cutoffs[i] >= t.cutoffs[i - 1]);
}

TEST_CASE("fixed point reports non-convergence") {
  FixedPointOptions opts;
  opts.max_iterations = 2;
  CHECK_THROWS_AS(fixed_point_cutoff(3, series4(), DiscontinuityModel::anharmonic_oscillator(), opts),
                  ConvergenceError);
}

TEST_CASE("addback Taylor coefficients are the subtracted moments") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  const double gc = 0.066;
  CHECK(addback(0.0, gc, m).real() == doctest::Approx(moment_truncated(0, gc, m)).epsilon(1e-12));
  const double h = 1e-3;
  const double d1 = (addback(h, gc, m).real() - addback(-h, gc, m).real()) / (2 * h);
  const double d2 = (addback(h, gc, m).real() - 2 * addback(0.0, gc, m).real() + addback(-h, gc, m).real()) / (h * h);
  CHECK(d1 == doctest::Approx(moment_truncated(1, gc, m)).epsilon(1e-4));
  CHECK(d2 / 2 == doctest::Approx(moment_truncated(2, gc, m)).epsilon(1e-3));
}

TEST_CASE("addback on and off the segment") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  const double gc = 0.066;
  for (double g : {-0.01, -0.04, -0.065}) CHECK(addback(g, gc, m).imag() == semiclassical_disc(-g, m));
  CHECK(addback(0.5, gc, m).imag() == 0.0);
  CHECK_THROWS_AS(addback(-gc, gc, m), DomainError);
  CHECK_THROWS_AS(addback_beyond_cut(-0.01, gc, m), DomainError);
  // Far from the segment 1/(lambda + g) ~ 1/g, leaving the zeroth moment of Im E.
  const double g = -1e4;
  const double zeroth =
      integrate([&](double l) { return semiclassical_disc(l, m); }, 1e-3, gc).value / kPi;
  CHECK(addback_beyond_cut(g, gc, m) * g == doctest::Approx(zeroth).epsilon(1e-4));
}

TEST_CASE("corrected approximant") {
  const auto m = DiscontinuityModel::anharmonic_oscillator();
  for (int N : {1, 3}) {
    const auto t = fixed_point_cutoff(N, series4(), m);
    const CorrectedApproximant c(series4(), m, N, t.cutoff());
    CHECK(std::abs(c(0.0).value - std::complex<double>(0.5, 0.0)) <= 1e-12);
    CHECK_THROWS_AS(c(-c.cutoff()), DomainError);
    CHECK(std::abs(c(1e-7).value - c(-1e-7).value) < 1e-6);
    for (double g : {-0.005, -0.02, -0.9 * c.cutoff()}) {
      CHECK(c(g).value.imag() == doctest::Approx(semiclassical_disc(-g, m)).epsilon(1e-8));
    }
    for (double g : {-1.1 * c.cutoff(), -0.3, -1.0}) CHECK(c(g).value.imag() < 0.0);
    const auto direct = assemble(0.7, N, series4(), m, t);
    CHECK(direct.value.real() == doctest::Approx(c(0.7).value.real()).epsilon(1e-11));
  }
}
