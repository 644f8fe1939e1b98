#include "vpt/dispersion.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vpt/error.hpp"

namespace vpt {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(u) exp(-u) without overflow for huge u.
double tunneling_shape(double u) { return std::exp(0.5 * std::log(u) - u); }

}  // namespace

const std::vector<double>& oscillator_rate_corrections() {
  static const std::vector<double> c = {
      -95.0 / 72.0,  -13259.0 / 10368.0, -8956043.0 / 2239488.0,
      -17.80162255, -98.64510840,       -643.7460486,
  };
  return c;
}

DiscontinuityModel DiscontinuityModel::anharmonic_oscillator(double omega, int correction_truncation) {
  if (!(omega > 0.0)) throw DomainError("DiscontinuityModel: omega must be positive");
  const auto& table = oscillator_rate_corrections();
  if (correction_truncation < 0 || correction_truncation > static_cast<int>(table.size())) {
    throw DomainError("DiscontinuityModel: correction truncation must be in [0, " +
                      std::to_string(table.size()) + "]");
  }
  DiscontinuityModel m;
  m.omega = omega;
  m.prefactor = std::sqrt(6.0 / kPi);
  m.action_scale = omega * omega * omega / 3.0;
  m.corrections = table;
  m.correction_truncation = correction_truncation;
  return m;
}

double DiscontinuityModel::correction_factor(double lambda) const {
  const double x = 3.0 * lambda / (omega * omega * omega);
  double c = 1.0;
  double xp = 1.0;
  for (int i = 0; i < correction_truncation; ++i) {
    xp *= x;
    c += corrections[i] * xp;
  }
  return c;
}

double semiclassical_disc(double lambda, const DiscontinuityModel& model) {
  if (!(lambda > 0.0)) throw DomainError("semiclassical_disc: lambda must be positive");
  const double u = model.u_of(lambda);
  return -model.omega * model.prefactor * tunneling_shape(u) * model.correction_factor(lambda);
}

namespace {

// d/dlambda of semiclassical_disc.
double semiclassical_disc_derivative(double lambda, const DiscontinuityModel& model) {
  const double u = model.u_of(lambda);
  const double shape = tunneling_shape(u);
  const double dshape_du = std::exp(-u) * (0.5 / std::sqrt(u) - std::sqrt(u));
  const double du_dlambda = -u / lambda;
  const double w3 = std::pow(model.omega, 3);
  const double x = 3.0 * lambda / w3;
  double dc = 0.0;
  double xp = 1.0;
  for (int i = 1; i <= model.correction_truncation; ++i) {
    dc += i * model.corrections[i - 1] * xp * (3.0 / w3);
    xp *= x;
  }
  return -model.omega * model.prefactor *
         (dshape_du * du_dlambda * model.correction_factor(lambda) + shape * dc);
}

// (-1)^k (1/pi) (-omega sqrt(6/pi)) (omega^3/3)^(-k), the common factor of all moments.
double moment_prefactor(int k, const DiscontinuityModel& model) {
  const double sign = (k % 2) ? -1.0 : 1.0;
  return sign * (-model.omega * model.prefactor / kPi) * std::pow(model.action_scale, -k);
}

}  // namespace

double upper_incomplete_gamma(double a, double x) {
  if (a > 0.0) return boost::math::tgamma(a, x);
  if (!(x > 0.0)) throw DomainError("upper_incomplete_gamma: x must be positive for a <= 0");
  if (a == 0.0) return boost::math::expint(1, x);
  // Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a
  return (upper_incomplete_gamma(a + 1.0, x) - std::exp(a * std::log(x) - x)) / a;
}

double moment_full(int k, const DiscontinuityModel& model) {
  if (k < 0) throw DomainError("moment_full: k must be nonnegative");
  if (model.correction_truncation > k) {
    throw DomainError("moment_full: correction term of order " +
                      std::to_string(model.correction_truncation) +
                      " grows too fast at large lambda; the moment of order " + std::to_string(k) +
                      " diverges");
  }
  double sum = std::tgamma(k + 0.5);
  for (int i = 1; i <= model.correction_truncation; ++i) {
    sum += model.corrections[i - 1] * std::tgamma(k - i + 0.5);
  }
  return moment_prefactor(k, model) * sum;
}

double moment_truncated(int k, double g_cut, const DiscontinuityModel& model) {
  if (k < 0) throw DomainError("moment_truncated: k must be nonnegative");
  if (!(g_cut > 0.0)) throw DomainError("moment_truncated: g_cut must be positive");
  const double uc = model.u_of(g_cut);
  double sum = upper_incomplete_gamma(k + 0.5, uc);
  for (int i = 1; i <= model.correction_truncation; ++i) {
    sum += model.corrections[i - 1] * upper_incomplete_gamma(k - i + 0.5, uc);
  }
  return moment_prefactor(k, model) * sum;
}

double moment_truncated_quadrature(int k, double g_cut, const DiscontinuityModel& model,
                                   const QuadratureOptions& opts) {
  if (k < 0) throw DomainError("moment_truncated_quadrature: k must be nonnegative");
  if (!(g_cut > 0.0)) throw DomainError("moment_truncated_quadrature: g_cut must be positive");
  const double uc = model.u_of(g_cut);
  auto integrand = [&](double u) {
    double c = 1.0;
    double up = 1.0;
    for (int i = 0; i < model.correction_truncation; ++i) {
      up /= u;
      c += model.corrections[i] * up;
    }
    return std::exp((k - 0.5) * std::log(u) - u) * c;
  };
  const auto r = integrate_to_infinity(integrand, uc, opts);
  return moment_prefactor(k, model) * r.value;
}

PerturbationSeries subtract_tip(const PerturbationSeries& series, double g_cut,
                                const DiscontinuityModel& model) {
  PerturbationSeries out;
  out.omega = series.omega;
  out.coefficients = series.coefficients;
  for (int k = 0; k <= series.order(); ++k) {
    const double delta = moment_truncated(k, g_cut, model) * std::pow(series.omega, 3 * k - 1);
    if (!std::isfinite(delta)) {
      throw NumericalError("subtract_tip: moment of order " + std::to_string(k) + " overflows");
    }
    out.coefficients[k] -= delta;
  }
  return out;
}

double cutoff_map(int order, const PerturbationSeries& series, const DiscontinuityModel& model,
                  double g_cut) {
  return branch_point(build_reexpansion(subtract_tip(series, g_cut, model), order));
}

IterationTrace fixed_point_cutoff(int order, const PerturbationSeries& series,
                                  const DiscontinuityModel& model, const FixedPointOptions& opts) {
  if (!(opts.tolerance > 0.0)) throw DomainError("fixed_point_cutoff: tolerance must be positive");
  IterationTrace trace;
  trace.order = order;
  trace.tolerance = opts.tolerance;

  double g = branch_point(build_reexpansion(series, order));
  trace.cutoffs.push_back(g);
  trace.coefficient_snapshots.push_back(subtract_tip(series, g, model).coefficients);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double next = cutoff_map(order, series, model, g);
    trace.cutoffs.push_back(next);
    trace.coefficient_snapshots.push_back(subtract_tip(series, next, model).coefficients);
    if (std::abs(next - g) <= opts.tolerance) {
      trace.converged = true;
      return trace;
    }
    g = next;
  }

  std::ostringstream os;
  os.precision(17);
  os << "cutoff history:";
  for (double c : trace.cutoffs) os << ' ' << c;
  throw ConvergenceError("fixed_point_cutoff: no convergence after " +
                             std::to_string(opts.max_iterations) + " iterations",
                         os.str());
}

std::complex<double> addback(double g, double g_cut, const DiscontinuityModel& model,
                             const QuadratureOptions& opts) {
  if (!(g_cut > 0.0)) throw DomainError("addback: g_cut must be positive");
  if (g <= -g_cut) throw DomainError("addback: g <= -g_cut is outside the subtracted segment");
  auto disc = [&](double lambda) { return lambda > 0.0 ? semiclassical_disc(lambda, model) : 0.0; };
  if (g >= 0.0) {
    auto integrand = [&](double lambda) { return disc(lambda) / (lambda + g); };
    return {integrate(integrand, 0.0, g_cut, opts).value / kPi, 0.0};
  }
  const double pole = -g;
  const auto pv = principal_value(disc, semiclassical_disc_derivative(pole, model), 0.0, g_cut, pole, opts);
  return {pv.value / kPi, semiclassical_disc(pole, model)};
}

double addback_beyond_cut(double g, double g_cut, const DiscontinuityModel& model,
                          const QuadratureOptions& opts) {
  if (!(g < -g_cut)) throw DomainError("addback_beyond_cut: requires g < -g_cut");
  auto integrand = [&](double lambda) {
    return lambda > 0.0 ? semiclassical_disc(lambda, model) / (lambda + g) : 0.0;
  };
  return integrate(integrand, 0.0, g_cut, opts).value / kPi;
}

CorrectedApproximant::CorrectedApproximant(const PerturbationSeries& series,
                                           const DiscontinuityModel& model, int order, double g_cut,
                                           const QuadratureOptions& quad)
    : model_(model),
      quad_(quad),
      modified_(build_reexpansion(subtract_tip(series, g_cut, model), order)),
      g_cut_(g_cut) {}

ResummedEnergy CorrectedApproximant::operator()(double g) const {
  ResummedEnergy e = evaluate(modified_, g);
  if (g > -g_cut_) {
    e.value += addback(g, g_cut_, model_, quad_);
  } else if (g < -g_cut_) {
    e.value += addback_beyond_cut(g, g_cut_, model_, quad_);
  } else {
    throw DomainError("assemble: the segment integral is singular at g = -g_cut");
  }
  return e;
}

ResummedEnergy assemble(double g, int order, const PerturbationSeries& series,
                        const DiscontinuityModel& model, const IterationTrace& trace) {
  if (!trace.converged) throw DomainError("assemble: cutoff iteration has not converged");
  return CorrectedApproximant(series, model, order, trace.cutoff())(g);
}

}  // namespace vpt
