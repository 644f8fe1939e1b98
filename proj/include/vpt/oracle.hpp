#pragma once

#include <vector>

namespace vpt {

/// Reference ground-state energies of H = p^2/2 + omega^2 x^2/2 + g x^4 from
/// diagonalization in the even-parity block of a harmonic-oscillator basis.
struct OracleConfig {
  /// Starting number of even basis functions; doubled until converged.
  int basis_size = 16;
  /// Basis frequency; 0 selects max(omega, (6g)^(1/3)).
  double basis_frequency = 0.0;
  double rel_tol = 1e-10;
  int max_basis_size = 2048;
};

/// Lowest eigenvalue at one fixed basis size, no convergence loop.
double ground_state_energy(double g, double omega, int basis_size, double basis_frequency = 0.0);

/// Doubles the basis until two successive sizes agree to config.rel_tol.
/// Throws ConvergenceError (with the convergence table) at the size cap.
double exact_energy(double g, double omega, const OracleConfig& config = {});

struct ConvergenceRow {
  int size = 0;
  double energy = 0.0;
  double delta = 0.0;  // energy - previous energy; 0 for the first row
};

std::vector<ConvergenceRow> convergence_report(double g, double omega, const std::vector<int>& sizes,
                                               double basis_frequency = 0.0);

}  // namespace vpt
