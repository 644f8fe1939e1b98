#include "vpt/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vpt/error.hpp"

namespace vpt {

namespace {

double default_basis_frequency(double g, double omega) {
  return std::max(omega, std::cbrt(6.0 * g));
}

}  // namespace

double ground_state_energy(double g, double omega, int basis_size, double basis_frequency) {
  if (g < 0.0) throw DomainError("exact_energy: g must be nonnegative");
  if (!(omega > 0.0)) throw DomainError("exact_energy: omega must be positive");
  if (basis_size < 1) throw DomainError("exact_energy: basis size must be positive");
  const double wb = basis_frequency > 0.0 ? basis_frequency : default_basis_frequency(g, omega);

  // H = H_b + (omega^2 - wb^2)/2 x^2 + g x^4, H_b diagonal in the basis of frequency wb.
  // With x = s (a + a^dagger), s^2 = 1/(2 wb), and states |n>, n = 2i:
  //   <n|x^2|n>   = s^2 (2n+1),          <n+2|x^2|n> = s^2 sqrt((n+1)(n+2))
  //   <n|x^4|n>   = s^4 (6n^2+6n+3),     <n+2|x^4|n> = s^4 (4n+6) sqrt((n+1)(n+2))
  //   <n+4|x^4|n> = s^4 sqrt((n+1)(n+2)(n+3)(n+4))
  const double s2 = 0.5 / wb;
  const double s4 = s2 * s2;
  const double shift = 0.5 * (omega * omega - wb * wb);
  const int K = basis_size;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    const double n = 2.0 * i;
    H(i, i) = wb * (n + 0.5) + shift * s2 * (2 * n + 1) + g * s4 * (6 * n * n + 6 * n + 3);
    if (i + 1 < K) {
      const double r = std::sqrt((n + 1) * (n + 2));
      H(i + 1, i) = H(i, i + 1) = shift * s2 * r + g * s4 * (4 * n + 6) * r;
    }
    if (i + 2 < K) {
      H(i + 2, i) = H(i, i + 2) = g * s4 * std::sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4));
    }
  }
  if (K == 1) return H(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("exact_energy: eigensolver failed");
  return solver.eigenvalues()(0);
}

double exact_energy(double g, double omega, const OracleConfig& config) {
  if (g == 0.0 && config.basis_frequency <= 0.0) return 0.5 * omega;
  int size = std::max(1, config.basis_size);
  double prev = ground_state_energy(g, omega, size, config.basis_frequency);
  std::vector<ConvergenceRow> rows{{size, prev, 0.0}};
  while (2 * size <= config.max_basis_size) {
    size *= 2;
    const double cur = ground_state_energy(g, omega, size, config.basis_frequency);
    rows.push_back({size, cur, cur - prev});
    if (std::abs(cur - prev) <= config.rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  std::ostringstream os;
  os.precision(17);
  os << "size energy delta\n";
  for (const auto& r : rows) os << r.size << ' ' << r.energy << ' ' << r.delta << '\n';
  throw ConvergenceError("exact_energy: basis cap reached before convergence", os.str());
}

std::vector<ConvergenceRow> convergence_report(double g, double omega, const std::vector<int>& sizes,
                                               double basis_frequency) {
  if (!std::is_sorted(sizes.begin(), sizes.end()) ||
      std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    throw DomainError("convergence_report: sizes must be strictly increasing");
  }
  std::vector<ConvergenceRow> rows;
  for (int s : sizes) {
    const double e = ground_state_energy(g, omega, s, basis_frequency);
    rows.push_back({s, e, rows.empty() ? 0.0 : e - rows.back().energy});
  }
  return rows;
}

}  // namespace vpt
