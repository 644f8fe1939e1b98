#include "vpt/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "vpt/error.hpp"

namespace vpt {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {}

int Polynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] != 0.0) return k;
  }
  return -1;
}

double Polynomial::coefficient(int power) const {
  if (power < 0 || power >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[power];
}

double Polynomial::operator()(double x) const {
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * x + *it;
  return s;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * z + *it;
  return s;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  const int n = degree();
  if (n < 0) throw DomainError("Polynomial::monic: zero polynomial");
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + n + 1);
  const double lead = c[n];
  for (auto& v : c) v /= lead;
  c[n] = 1.0;
  return Polynomial(std::move(c));
}

double Polynomial::magnitude(double abs_x) const {
  double s = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * abs_x + std::abs(*it);
  return s;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <typename T>
T newton_polish(const Polynomial& p, const Polynomial& dp, T z, int max_iter) {
  T best = z;
  double best_val = std::abs(p(z));
  for (int it = 0; it < max_iter && best_val > 0.0; ++it) {
    const T d = dp(z);
    if (d == T(0)) break;
    z = z - p(z) / d;
    const double v = std::abs(p(z));
    if (!(v < best_val)) break;
    best_val = v;
    best = z;
  }
  return best;
}

// Stationary point of p on the real axis near x0 (zero of p').
double stationary_point(const Polynomial& dp, const Polynomial& ddp, double x0) {
  double x = x0;
  for (int it = 0; it < 50; ++it) {
    const double d2 = ddp(x);
    if (d2 == 0.0) break;
    const double step = dp(x) / d2;
    x -= step;
    if (std::abs(step) <= 4 * kEps * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 0) throw DomainError("polynomial_roots: zero polynomial has no isolated roots");
  std::vector<std::complex<double>> roots;
  if (n == 0) return roots;

  const auto c = p.coefficients();
  int zeros = 0;
  while (zeros < n && c[zeros] == 0.0) ++zeros;
  roots.assign(zeros, std::complex<double>(0.0, 0.0));

  const int m = n - zeros;
  if (m == 0) return roots;
  std::vector<double> reduced(c.begin() + zeros, c.begin() + n + 1);

  // Rescale x = s t with s a power of two near the geometric-mean root size.
  const double mean = std::pow(std::abs(reduced.front() / reduced.back()), 1.0 / m);
  const double s = std::ldexp(1.0, std::ilogb(std::max(mean, std::numeric_limits<double>::min())));
  std::vector<double> scaled(m + 1);
  double sk = 1.0;
  for (int k = 0; k <= m; ++k) {
    scaled[k] = reduced[k] * sk;
    sk *= s;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -scaled[i] / scaled[m];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("polynomial_roots: companion eigenvalue iteration failed");
  }

  const Polynomial q(reduced);
  const Polynomial dq = q.derivative();
  const Polynomial ddq = dq.derivative();
  const auto& ev = solver.eigenvalues();

  std::vector<std::complex<double>> upper;  // one member of each complex pair
  std::vector<double> reals;
  for (int i = 0; i < m; ++i) {
    const std::complex<double> z = ev[i] * s;
    if (z.imag() == 0.0) {
      reals.push_back(newton_polish(q, dq, z.real(), 40));
    } else if (z.imag() > 0.0) {
      upper.push_back(newton_polish(q, dq, z, 40));
    }
  }

  for (auto z : upper) {
    const double scale = std::max(std::abs(z), s);
    if (std::abs(z.imag()) <= 1e-6 * scale) {
      // Nearly real pair: decide from the real-axis shape of q near Re z.
      const double xs = stationary_point(dq, ddq, z.real());
      const double val = q(xs);
      const double curv = ddq(xs);
      const double noise = 64 * kEps * q.magnitude(std::abs(xs));
      if (std::abs(xs - z.real()) <= 1e-3 * scale) {
        if (std::abs(val) <= noise) {
          reals.push_back(xs);
          reals.push_back(xs);
          continue;
        }
        if (val * curv < 0.0) {
          const double half = std::sqrt(-2.0 * val / curv);
          reals.push_back(newton_polish(q, dq, xs - half, 40));
          reals.push_back(newton_polish(q, dq, xs + half, 40));
          continue;
        }
      }
    }
    if (z.imag() < 0.0) z = std::conj(z);
    roots.push_back(z);
    roots.push_back(std::conj(z));
  }
  for (double x : reals) roots.emplace_back(x, 0.0);
  return roots;
}

}  // namespace vpt
