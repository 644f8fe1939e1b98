#pragma once

#include <complex>
#include <vector>

#include "vpt/quadrature.hpp"
#include "vpt/series.hpp"
#include "vpt/variational.hpp"

namespace vpt {

/// Semiclassical model of the left-hand cut,
///   Im E(-lambda - i0) = -omega sqrt(6/pi) sqrt(u) exp(-u) C(lambda),  u = omega^3 / (3 lambda),
/// with C = 1 + sum_{i=1..T} c_i (3 lambda / omega^3)^i truncated at T = correction_truncation.
struct DiscontinuityModel {
  double omega = 1.0;
  double prefactor = 0.0;     // sqrt(6/pi)
  double action_scale = 0.0;  // omega^3 / 3
  std::vector<double> corrections;
  int correction_truncation = 0;

  static DiscontinuityModel anharmonic_oscillator(double omega = 1.0, int correction_truncation = 0);

  double u_of(double lambda) const { return action_scale / lambda; }
  /// C(lambda).
  double correction_factor(double lambda) const;
};

/// Known higher-order corrections to the oscillator's tunneling rate, in
/// powers of 3|g|/omega^3. The first one matches the -95/72 of the large-order law.
const std::vector<double>& oscillator_rate_corrections();

struct IterationTrace {
  int order = 0;
  std::vector<double> cutoffs;
  std::vector<std::vector<double>> coefficient_snapshots;
  bool converged = false;
  double tolerance = 0.0;

  double cutoff() const { return cutoffs.back(); }
  const std::vector<double>& final_coefficients() const { return coefficient_snapshots.back(); }
};

/// Im E(-lambda - i0). Requires lambda > 0.
double semiclassical_disc(double lambda, const DiscontinuityModel& model);

/// Coefficient of g^k generated by the full cut:
///   (-1)^k / pi * integral_0^inf Im E(-lambda) / lambda^(k+1) dlambda.
/// Throws DomainError when a correction term makes the integral diverge.
double moment_full(int k, const DiscontinuityModel& model);

/// Coefficient of g^k generated by the cut segment (0, g_cut), from upper
/// incomplete gamma functions.
double moment_truncated(int k, double g_cut, const DiscontinuityModel& model);

/// Same quantity by adaptive quadrature of the u-substituted integrand.
double moment_truncated_quadrature(int k, double g_cut, const DiscontinuityModel& model,
                                   const QuadratureOptions& opts = {});

/// Gamma(a, x) for real a (negative allowed) and x > 0.
double upper_incomplete_gamma(double a, double x);

/// E'_k = E_k - delta_k(g_cut) with delta_k converted to the dimensionless
/// convention of the series (factor omega^(3k-1)).
PerturbationSeries subtract_tip(const PerturbationSeries& series, double g_cut,
                                const DiscontinuityModel& model);

struct FixedPointOptions {
  double tolerance = 1e-10;
  int max_iterations = 100;
};

/// Iterates g <- branch_point(W_N built on subtract_tip(series, g)), starting
/// from the branch point of the unsubtracted series.
/// Throws ConvergenceError (with the trace rendered in diagnostics) on failure.
IterationTrace fixed_point_cutoff(int order, const PerturbationSeries& series,
                                  const DiscontinuityModel& model, const FixedPointOptions& opts = {});

/// Single application of the cutoff map g -> branch_point(W_N[E'(g)]).
double cutoff_map(int order, const PerturbationSeries& series, const DiscontinuityModel& model,
                  double g_cut);

/// Energy carried by the cut segment (0, g_cut), on the lower edge:
///   (1/pi) integral_0^g_cut Im E(-lambda) / (lambda + g) dlambda.
/// For g in (-g_cut, 0) the real part is a principal value and the imaginary
/// part is Im E(-|g|). Throws DomainError for g <= -g_cut.
std::complex<double> addback(double g, double g_cut, const DiscontinuityModel& model,
                             const QuadratureOptions& opts = {});

/// The same integral for g < -g_cut, where it has no pole and is real.
double addback_beyond_cut(double g, double g_cut, const DiscontinuityModel& model,
                          const QuadratureOptions& opts = {});

/// Corrected energy W'_N(g) + Delta_N E(g) built from a converged trace.
ResummedEnergy assemble(double g, int order, const PerturbationSeries& series,
                        const DiscontinuityModel& model, const IterationTrace& trace);

/// Precomputed pieces of the corrected approximant for repeated evaluation.
class CorrectedApproximant {
 public:
  CorrectedApproximant(const PerturbationSeries& series, const DiscontinuityModel& model,
                       int order, double g_cut, const QuadratureOptions& quad = {1e-13, 0.0, 4000});

  ResummedEnergy operator()(double g) const;
  const VariationalApproximant& variational() const { return modified_; }
  double cutoff() const { return g_cut_; }

 private:
  DiscontinuityModel model_;
  QuadratureOptions quad_;
  VariationalApproximant modified_;
  double g_cut_;
};

}  // namespace vpt
