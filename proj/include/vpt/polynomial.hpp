#pragma once

#include <complex>
#include <span>
#include <vector>

namespace vpt {

/// Real polynomial stored with ascending powers: c[0] + c[1] x + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);

  /// Degree after ignoring exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const;
  std::span<const double> coefficients() const { return coeffs_; }
  double coefficient(int power) const;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Polynomial derivative() const;
  /// Divides by the leading coefficient.
  Polynomial monic() const;

  /// Sum of |c_k| |x|^k, the natural scale for roundoff in evaluating at x.
  double magnitude(double abs_x) const;

 private:
  std::vector<double> coeffs_;
};

/// All roots of a real polynomial, counted with multiplicity.
///
/// Roots come from the eigenvalues of the companion matrix of the rescaled
/// polynomial and are then polished by Newton's method. Complex roots are
/// returned as exact conjugate pairs. Nearly-real pairs are resolved against
/// the real axis: if the polynomial changes sign (or touches zero to roundoff)
/// near their real part they are replaced by the corresponding real roots.
/// Exactly-zero low-order coefficients produce exact zero roots.
std::vector<std::complex<double>> polynomial_roots(const Polynomial& p);

}  // namespace vpt
