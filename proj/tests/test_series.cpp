#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vpt/error.hpp"
#include "vpt/series.hpp"

using namespace vpt;

namespace {

// Independent generator: logarithmic derivative y = -psi'/psi = x + sum g^n y_n
// of the ground state, which obeys -(y^2 - y')/2 + x^2/2 + g x^4 = E. Each y_n
// is odd of degree 2n+1; solving from the top power down gives E_n at x^0.
std::vector<mpq_class> riccati_coefficients(int order) {
  std::vector<std::vector<mpq_class>> b(order + 1);  // b[n][k]: coefficient of x^(2k+1)
  b[0] = {mpq_class(1)};
  std::vector<mpq_class> e{mpq_class(1, 2)};
  for (int n = 1; n <= order; ++n) {
    std::vector<mpq_class> q(n + 2, 0);  // q[j]: x^(2j) coefficient of sum_{m=1}^{n-1} y_m y_{n-m}
    for (int m = 1; m < n; ++m)
      for (std::size_t i = 0; i < b[m].size(); ++i)
        for (std::size_t k = 0; k < b[n - m].size(); ++k) q[i + k + 1] += b[m][i] * b[n - m][k];
    b[n].assign(n + 2, 0);
    for (int j = n + 1; j >= 1; --j) {
      mpq_class rhs = mpq_class(2 * j + 1, 2) * b[n][j] - q[j] / 2;
      if (n == 1 && j == 2) rhs += 1;
      b[n][j - 1] = rhs;
    }
    b[n].pop_back();
    e.push_back(b[n][0] / 2 - q[0] / 2);
  }
  return e;
}

}  // namespace

TEST_CASE("low-order coefficients") {
  const auto e = bender_wu_coefficients(5);
  REQUIRE(e.size() == 6);
  CHECK(e[0] == mpq_class(1, 2));
  CHECK(e[1] == mpq_class(3, 4));
  CHECK(e[2] == mpq_class(-21, 8));
  CHECK(e[3] == mpq_class(333, 16));
  CHECK(e[4] == mpq_class(-30885, 128));
  CHECK(e[5] == mpq_class(916731, 256));
}

TEST_CASE("recursion agrees with the Riccati generator") {
  const auto a = bender_wu_coefficients(40);
  const auto b = riccati_coefficients(40);
  for (int n = 0; n <= 40; ++n) {
    INFO("n = " << n);
    CHECK(a[n] == b[n]);
  }
}

TEST_CASE("order zero and capacity") {
  const auto e = bender_wu_coefficients(0);
  REQUIRE(e.size() == 1);
  CHECK(to_rational_string(e[0]) == "1/2");
  CHECK_THROWS_AS(bender_wu_coefficients(kMaxBenderWuOrder + 1), CapacityError);
  CHECK_THROWS_AS(bender_wu_coefficients(-1), DomainError);
}

TEST_CASE("coefficients alternate in sign and grow factorially") {
  const auto s = PerturbationSeries::anharmonic_oscillator(30);
  for (int n = 1; n <= 30; ++n) {
    CHECK((s.coefficients[n] > 0) == (n % 2 == 1));
    if (n >= 3) CHECK(std::abs(s.coefficients[n]) > std::abs(s.coefficients[n - 1]));
  }
}

TEST_CASE("rational to double rounds correctly") {
  CHECK(to_double(mpq_class(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(mpq_class(-30885, 128)) == -241.2890625);
  CHECK(to_double(mpq_class(0)) == 0.0);
  // 2^60 + 1 is not representable; nearest is 2^60.
  mpz_class big = 1;
  big <<= 60;
  CHECK(to_double(mpq_class(big + 1)) == std::ldexp(1.0, 60));
  CHECK(to_rational_string(mpq_class(-7)) == "-7");
}

TEST_CASE("large-order ratio approaches one with the 95/72 correction") {
  const auto s = PerturbationSeries::anharmonic_oscillator(25);
  const auto p = LargeOrderParams::anharmonic_oscillator();
  const auto rows = large_order_ratio_check(s, p, 8, 25);
  REQUIRE(rows.size() == 18);
  for (const auto& r : rows) {
    INFO("k = " << r.k);
    CHECK(std::abs(r.residual) <= 5.0 / (r.k * r.k));
    CHECK(r.ratio < 1.0);
  }
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].ratio > rows[i - 1].ratio);
  CHECK(std::abs(s.coefficients[25] / asymptotic_coefficient(25, p, false) - 1.0) <= 0.06);
}

TEST_CASE("ratio check is frequency independent") {
  const auto a = large_order_ratio_check(PerturbationSeries::anharmonic_oscillator(15, 1.0),
                                         LargeOrderParams::anharmonic_oscillator(1.0), 8, 15);
  const auto b = large_order_ratio_check(PerturbationSeries::anharmonic_oscillator(15, 2.5),
                                         LargeOrderParams::anharmonic_oscillator(2.5), 8, 15);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i].ratio == doctest::Approx(a[i].ratio).epsilon(1e-13));
}

TEST_CASE("fault override changes the requested coefficient and propagates") {
  const auto clean = bender_wu_coefficients(8);
  const auto bad = detail::bender_wu_coefficients_with_override(8, 2, mpq_class(-2));
  CHECK(bad[0] == clean[0]);
  CHECK(bad[1] == clean[1]);
  CHECK(bad[2] == mpq_class(-2));
  CHECK(bad[3] != clean[3]);
}

TEST_CASE("partial sum") {
  const auto s = PerturbationSeries::anharmonic_oscillator(3, 2.0);
  const double g = 0.1, x = g / 8.0;
  CHECK(partial_sum(s, g, 2) == doctest::Approx(2.0 * (0.5 + 0.75 * x - 2.625 * x * x)).epsilon(1e-15));
  CHECK(partial_sum(s, 0.0, 3) == 1.0);
}
