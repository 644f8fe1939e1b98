#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vpt {

/// Weak-coupling series E(g) = omega * sum_n E_n (g / omega^3)^n.
///
/// The coefficients are dimensionless. `exact` holds the rational values when
/// the series comes straight from the recursion; cut-subtracted series only
/// carry floating-point coefficients.
struct PerturbationSeries {
  double omega = 1.0;
  std::vector<double> coefficients;
  std::vector<mpq_class> exact;

  int order() const { return static_cast<int>(coefficients.size()) - 1; }
  bool has_exact() const { return !exact.empty(); }

  /// Ground-state series of H = p^2/2 + omega^2 x^2/2 + g x^4 to order N.
  static PerturbationSeries anharmonic_oscillator(int order, double omega = 1.0);
};

/// Large-order growth data
///   E_k ~ gamma p^(beta+1) (-a)^k Gamma(p k + beta + 1) [1 + gamma_1/k + ...]
/// where Gamma(k + beta + 1) stands in for k^beta k! (they agree to leading order).
struct LargeOrderParams {
  double omega = 1.0;
  double gamma = 0.0;
  double a = 0.0;
  int p = 1;
  int q = 3;
  double beta = 0.0;
  std::vector<double> subleading;

  static LargeOrderParams anharmonic_oscillator(double omega = 1.0);
};

inline constexpr int kMaxBenderWuOrder = 200;

/// E_0..E_N for the quartic oscillator as exact rationals.
/// Throws CapacityError for N > kMaxBenderWuOrder.
std::vector<mpq_class> bender_wu_coefficients(int order);

namespace detail {
/// Same recursion with E_{index} forced to `value` before higher orders are
/// generated. Used to inject faults into the acceptance suite.
std::vector<mpq_class> bender_wu_coefficients_with_override(int order, int index,
                                                            const mpq_class& value);
}  // namespace detail

/// Nearest double to an exact rational.
double to_double(const mpq_class& q);

/// "916731/256" style string; integers print without a denominator.
std::string to_rational_string(const mpq_class& q);

/// omega * sum_{n<=N} E_n (g/omega^3)^n.
double partial_sum(const PerturbationSeries& series, double g, int order);

/// Leading large-order term at index k, optionally times (1 + gamma_1/k + ...).
/// The subleading factor is skipped at k = 0.
double asymptotic_coefficient(int k, const LargeOrderParams& params, bool with_subleading);

struct RatioResidual {
  int k = 0;
  double ratio = 0.0;     // E_k / leading(k)
  double residual = 0.0;  // ratio - (1 + gamma_1/k)
};

/// Compares the series coefficients (converted to the dimensional g^k
/// coefficients omega^(1-3k) E_k) against the leading asymptotic term.
std::vector<RatioResidual> large_order_ratio_check(const PerturbationSeries& series,
                                                   const LargeOrderParams& params, int k_min,
                                                   int k_max);

}  // namespace vpt
