#include "vpt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "vpt/error.hpp"

namespace vpt {

namespace {

// Kronrod abscissae: odd indices (1, 3, 5) and 7 are the Gauss-Legendre nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[i] * s;
    if (i % 2 == 1) gauss += kWg[i / 2] * s;
  }
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  out.evaluations = 15;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= opts.max_intervals) {
      std::ostringstream os;
      os.precision(17);
      os << "interval budget " << opts.max_intervals << " exhausted on [" << a << ", " << b
         << "]: value " << total << ", error estimate " << error;
      throw ConvergenceError("integrate: no convergence", os.str());
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Roundoff floor: the interval cannot be split further.
    if (std::abs(worst.b - worst.a) <= 64 * eps * std::max(std::abs(mid), 1e-300)) break;
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed accumulated update roundoff.
  total = 0.0;
  error = 0.0;
  out.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  return out;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureOptions& opts) {
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

QuadratureResult principal_value(const Integrand& f, double df_at_c, double a, double b, double c,
                                 const QuadratureOptions& opts) {
  if (!(a < c && c < b)) throw DomainError("principal_value: pole must lie strictly inside (a, b)");
  // Fold the symmetric part [c - h, c + h] onto (0, h], where
  // (f(c + t) - f(c - t)) / t is regular; the rest has no pole.
  const double h = std::min(c - a, b - c);
  // Below this distance the quotient is pure cancellation noise; its limit 2 f'(c) is used.
  const double tiny = 1e-7 * h;
  auto folded = [&](double t) {
    if (t < tiny) return 2.0 * df_at_c;
    return (f(c + t) - f(c - t)) / t;
  };
  auto plain = [&](double x) { return f(x) / (x - c); };
  QuadratureResult out = integrate(folded, 0.0, h, opts);
  QuadratureResult rest;
  if (c - a > h) rest = integrate(plain, a, c - h, opts);
  if (b - c > h) rest = integrate(plain, c + h, b, opts);
  out.value += rest.value;
  out.error += rest.error;
  out.intervals += rest.intervals;
  out.evaluations += rest.evaluations;
  return out;
}

}  // namespace vpt
