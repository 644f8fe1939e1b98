#pragma once

#include <vector>

#include "vpt/dispersion.hpp"
#include "vpt/oracle.hpp"
#include "vpt/variational.hpp"

namespace vpt {

enum class GridKind { linear, logarithmic };

/// `points` couplings from lo to hi. Logarithmic grids include both ends;
/// linear grids exclude hi when `open_upper` is set.
std::vector<double> make_grid(double lo, double hi, int points, GridKind kind, bool open_upper = false);

// Grid kernels. Every point is independent, so the OpenMP versions are
// bitwise identical to the serial reference versions kept for testing.

namespace serial {
std::vector<ResummedEnergy> variational_sweep(const VariationalApproximant& appr,
                                              const std::vector<double>& grid);
std::vector<ResummedEnergy> corrected_sweep(const CorrectedApproximant& appr,
                                            const std::vector<double>& grid);
std::vector<double> oracle_sweep(const std::vector<double>& grid, double omega,
                                 const OracleConfig& config = {});
}  // namespace serial

namespace parallel {
std::vector<ResummedEnergy> variational_sweep(const VariationalApproximant& appr,
                                              const std::vector<double>& grid);
std::vector<ResummedEnergy> corrected_sweep(const CorrectedApproximant& appr,
                                            const std::vector<double>& grid);
std::vector<double> oracle_sweep(const std::vector<double>& grid, double omega,
                                 const OracleConfig& config = {});
/// Threads OpenMP would use for the kernels above.
int max_threads();
}  // namespace parallel

}  // namespace vpt
