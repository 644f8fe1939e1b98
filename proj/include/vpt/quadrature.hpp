#pragma once

#include <functional>

namespace vpt {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod on [a, b].
/// Throws ConvergenceError when the interval budget runs out.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts = {});

/// Integral over [a, inf) after mapping x = a + t / (1 - t).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts = {});

/// Cauchy principal value of the integral of f(x) / (x - c) over [a, b], a < c < b.
///
/// The symmetric neighbourhood [c - h, c + h] is folded into the regular
/// integrand (f(c + t) - f(c - t)) / t on (0, h]; `df_at_c` supplies its limit
/// 2 f'(c) at t = 0. The remainder of [a, b] is integrated directly.
QuadratureResult principal_value(const Integrand& f, double df_at_c, double a, double b, double c,
                                 const QuadratureOptions& opts = {});

}  // namespace vpt
