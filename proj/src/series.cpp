#include "vpt/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vpt/error.hpp"

namespace vpt {

namespace {

// Rayleigh-Schroedinger recursion in the polynomial representation
//   psi = exp(-x^2/2) sum_n g^n phi_n(x),  phi_n = sum_{j=1..2n} A[n][j] x^(2j),
// which turns -phi''/2 + x phi' + g x^4 phi = (E - 1/2) phi into
//   2j A[n][j] = (j+1)(2j+1) A[n][j+1] - A[n-1][j-2] + sum_{m=1}^{n-1} e_m A[n-m][j]
// with e_n = -A[n][1]. Normalization: phi_n has no constant term for n >= 1.
std::vector<mpq_class> run_recursion(int order, int override_index, const mpq_class* override_value) {
  if (order < 0) throw DomainError("bender_wu_coefficients: order must be nonnegative");
  if (order > kMaxBenderWuOrder) {
    throw CapacityError("bender_wu_coefficients: order " + std::to_string(order) +
                        " exceeds the cap of " + std::to_string(kMaxBenderWuOrder));
  }

  std::vector<mpq_class> energy(order + 1);
  energy[0] = mpq_class(1, 2);
  if (override_value && override_index == 0) energy[0] = *override_value;

  std::vector<std::vector<mpq_class>> amp(order + 1);
  amp[0].assign(3, mpq_class(0));
  amp[0][0] = 1;

  mpq_class acc;
  mpq_class term;
  for (int n = 1; n <= order; ++n) {
    const int top = 2 * n;
    auto& row = amp[n];
    row.assign(top + 2, mpq_class(0));
    for (int j = top; j >= 1; --j) {
      acc = (j + 1) * (2 * j + 1);
      acc *= row[j + 1];
      if (j >= 2 && j - 2 < static_cast<int>(amp[n - 1].size())) acc -= amp[n - 1][j - 2];
      // A[n-m][j] vanishes unless j <= 2(n-m).
      const int m_max = n - (j + 1) / 2;
      for (int m = 1; m <= m_max && m <= n - 1; ++m) {
        term = energy[m] * amp[n - m][j];
        acc += term;
      }
      row[j] = acc / (2 * j);
    }
    energy[n] = -row[1];
    if (override_value && override_index == n) energy[n] = *override_value;
  }
  return energy;
}

}  // namespace

std::vector<mpq_class> bender_wu_coefficients(int order) {
  return run_recursion(order, -1, nullptr);
}

namespace detail {
std::vector<mpq_class> bender_wu_coefficients_with_override(int order, int index,
                                                            const mpq_class& value) {
  return run_recursion(order, index, &value);
}
}  // namespace detail

double to_double(const mpq_class& q) {
  // mpq_get_d truncates; pick whichever neighbour is closer.
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  double best = t;
  mpq_class best_err = abs(q - mpq_class(t));
  for (double c : {std::nextafter(t, -std::numeric_limits<double>::infinity()),
                   std::nextafter(t, std::numeric_limits<double>::infinity())}) {
    if (!std::isfinite(c)) continue;
    mpq_class err = abs(q - mpq_class(c));
    if (err < best_err) {
      best_err = err;
      best = c;
    }
  }
  return best;
}

std::string to_rational_string(const mpq_class& q) { return q.get_str(10); }

PerturbationSeries PerturbationSeries::anharmonic_oscillator(int order, double omega) {
  if (!(omega > 0.0)) throw DomainError("anharmonic_oscillator: omega must be positive");
  PerturbationSeries s;
  s.omega = omega;
  s.exact = bender_wu_coefficients(order);
  s.coefficients.reserve(s.exact.size());
  for (const auto& q : s.exact) s.coefficients.push_back(to_double(q));
  return s;
}

LargeOrderParams LargeOrderParams::anharmonic_oscillator(double omega) {
  LargeOrderParams p;
  p.omega = omega;
  p.gamma = -(omega / std::numbers::pi) * std::sqrt(6.0 / std::numbers::pi);
  p.a = 3.0 / (omega * omega * omega);
  p.p = 1;
  p.q = 3;
  p.beta = -0.5;
  p.subleading = {-95.0 / 72.0};
  return p;
}

double partial_sum(const PerturbationSeries& series, double g, int order) {
  if (order < 0 || order > series.order()) {
    throw DomainError("partial_sum: order " + std::to_string(order) + " outside series of order " +
                      std::to_string(series.order()));
  }
  const double w = series.omega;
  const double x = g / (w * w * w);
  // Horner from the top.
  double sum = 0.0;
  for (int n = order; n >= 0; --n) sum = sum * x + series.coefficients[n];
  return w * sum;
}

double asymptotic_coefficient(int k, const LargeOrderParams& params, bool with_subleading) {
  if (k < 0) throw DomainError("asymptotic_coefficient: k must be nonnegative");
  const double arg = static_cast<double>(params.p) * k + params.beta + 1.0;
  const double p_factor = std::pow(static_cast<double>(params.p), params.beta + 1.0);
  double value = params.gamma * p_factor * std::pow(params.a, k) * std::tgamma(arg);
  if (!std::isfinite(value)) {
    value = params.gamma * std::exp(std::lgamma(arg) + k * std::log(params.a) + std::log(p_factor));
  }
  if (k % 2 == 1) value = -value;
  if (with_subleading && k >= 1) {
    double factor = 1.0;
    double kp = 1.0;
    for (double c : params.subleading) {
      kp *= k;
      factor += c / kp;
    }
    value *= factor;
  }
  return value;
}

std::vector<RatioResidual> large_order_ratio_check(const PerturbationSeries& series,
                                                   const LargeOrderParams& params, int k_min,
                                                   int k_max) {
  if (k_min < 1 || k_max < k_min) throw DomainError("large_order_ratio_check: need 1 <= k_min <= k_max");
  if (k_max > series.order()) throw DomainError("large_order_ratio_check: series too short");
  const double w = series.omega;
  const double gamma1 = params.subleading.empty() ? 0.0 : params.subleading.front();
  std::vector<RatioResidual> out;
  out.reserve(k_max - k_min + 1);
  for (int k = k_min; k <= k_max; ++k) {
    const double dimensional = series.coefficients[k] * std::pow(w, 1 - 3 * k);
    RatioResidual r;
    r.k = k;
    r.ratio = dimensional / asymptotic_coefficient(k, params, false);
    r.residual = r.ratio - (1.0 + gamma1 / k);
    out.push_back(r);
  }
  return out;
}

}  // namespace vpt
