#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "vpt/polynomial.hpp"
#include "vpt/series.hpp"

namespace vpt {

/// Order-N variational reexpansion of a weak-coupling series.
///
/// Substituting omega -> sqrt(Omega^2 + omega^2 - Omega^2) and reexpanding
/// with (omega^2 - Omega^2) counted as order g gives
///   W_N(g, Omega) = Omega sum_{n=0..N} E_n f_n(Omega) (g / Omega^3)^n,
///   f_n(Omega)   = sum_{j=0..N-n} binom((1-3n)/2, j) (-1)^j (1 - omega^2/Omega^2)^j.
/// Only the quartic-oscillator exponents (energy ~ omega^1, coupling ~ omega^3) are supported.
class VariationalApproximant {
 public:
  VariationalApproximant(PerturbationSeries base, int order);

  int order() const { return order_; }
  double omega() const { return base_.omega; }
  const PerturbationSeries& base() const { return base_; }
  static constexpr int p = 1;
  static constexpr int q = 3;

  /// f_table()[n][j] = binom((1-3n)/2, j) (-1)^j for j = 0..N-n.
  const std::vector<std::vector<double>>& f_table() const { return f_table_; }

  /// f_n evaluated at Omega.
  std::complex<double> f(int n, std::complex<double> Omega) const;

  /// Laurent coefficients of W at fixed g: W = sum_k out[k - lowest_power()] Omega^k.
  std::vector<double> laurent(double g) const;
  /// d/dg of the Laurent coefficients.
  std::vector<double> laurent_dg(double g) const;
  int lowest_power() const { return 1 - 3 * order_; }

 private:
  PerturbationSeries base_;
  int order_;
  std::vector<std::vector<double>> f_table_;
  // terms_[n][k - lowest_power()]: coefficient of g^n Omega^k.
  std::vector<std::vector<double>> terms_;
};

enum class CandidateKind { extremum, turning_point };

struct OmegaCandidate {
  std::complex<double> value;
  CandidateKind kind = CandidateKind::extremum;
  /// |d^m W / dOmega^m| |Omega|^m / |W| at the root (m = 1 or 2).
  double residual = 0.0;

  bool is_real() const { return value.imag() == 0.0; }
};

enum class BranchTag { real, continued_complex };

struct ResummedEnergy {
  double g = 0.0;
  std::complex<double> value;
  OmegaCandidate omega_used;
  BranchTag branch = BranchTag::real;
};

VariationalApproximant build_reexpansion(const PerturbationSeries& base, int order);

/// W_N(g, Omega). Throws DomainError at Omega = 0.
std::complex<double> eval_W(const VariationalApproximant& appr, double g, std::complex<double> Omega);

/// d^m W / dOmega^m for m = 0, 1, 2.
std::complex<double> eval_W_derivative(const VariationalApproximant& appr, double g,
                                       std::complex<double> Omega, int m);

/// Monic numerator of d^m W/dOmega^m after multiplying by Omega^(3N-1+m).
/// For m = 1 the degree is 3N.
Polynomial stationarity_polynomial(const VariationalApproximant& appr, double g, int derivative_order);

/// Nonzero roots of the first- and second-derivative polynomials, complex ones
/// included. A root shared by both is reported once, as an extremum.
std::vector<OmegaCandidate> omega_candidates(const VariationalApproximant& appr, double g);

/// Picks the optimal frequency.
///
/// With a hint, returns the candidate closest to the hint (or its mirror
/// image), preferring the hint's kind. Without a hint: the smallest positive
/// real extremum, else the smallest positive real turning point, else the
/// complex pair (extrema before turning points) with the largest real part.
/// From a complex pair the member giving Im W < 0 is returned.
OmegaCandidate select_omega(const VariationalApproximant& appr, double g,
                            const std::vector<OmegaCandidate>& candidates,
                            const std::optional<OmegaCandidate>& hint = std::nullopt);

/// The variational energy W_N(g, Omega_N).
///
/// For g < 0 the optimum is followed continuously from Omega = omega at g = 0,
/// which keeps it on the physical branch through the real window and onto the
/// complex pair born at its end.
ResummedEnergy evaluate(const VariationalApproximant& appr, double g);

/// Evaluates a whole grid, carrying the optimum from point to point outward
/// from g = 0. Matches pointwise evaluate() to roundoff.
std::vector<ResummedEnergy> evaluate_along(const VariationalApproximant& appr,
                                           const std::vector<double>& grid);

struct BranchPointInfo {
  double g_bp = 0.0;      ///< positive; the real window is (-g_bp, 0)
  double omega_bp = 0.0;  ///< real double root of the stationarity polynomial at g = -g_bp
};

/// Largest g_bp such that evaluate() is real on (-g_bp, 0).
/// Closed form for N = 1; otherwise bracketed by continuation, narrowed by
/// bisection and polished as a double root of the stationarity polynomial.
double branch_point(const VariationalApproximant& appr);
BranchPointInfo branch_point_info(const VariationalApproximant& appr);
/// The continuation/bisection route, also for N = 1.
BranchPointInfo branch_point_numeric(const VariationalApproximant& appr, double window = 10.0);

/// N = 1 energy from the trigonometric / hyperbolic solution of the stationarity cubic.
std::complex<double> closed_form_W1(const VariationalApproximant& appr, double g);
/// Same for the unmodified oscillator series at frequency omega.
std::complex<double> closed_form_W1(double g, double omega);
/// The optimal frequency used by closed_form_W1.
std::complex<double> closed_form_Omega1(const VariationalApproximant& appr, double g);

}  // namespace vpt
