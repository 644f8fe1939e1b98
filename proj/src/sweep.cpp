#include "vpt/sweep.hpp"

#include <omp.h>

#include <cmath>
#include <exception>

#include "vpt/error.hpp"

namespace vpt {

std::vector<double> make_grid(double lo, double hi, int points, GridKind kind, bool open_upper) {
  if (!(lo < hi)) throw DomainError("make_grid: need lo < hi");
  if (points < 2) throw DomainError("make_grid: need at least two points");
  std::vector<double> grid(points);
  if (kind == GridKind::logarithmic) {
    if (!(lo > 0.0)) throw DomainError("make_grid: logarithmic grid needs lo > 0");
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < points; ++i) grid[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
  }
  const int divisions = open_upper ? points : points - 1;
  for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / divisions;
  if (!open_upper) grid.back() = hi;
  return grid;
}

namespace {

template <typename Out, typename Fn>
std::vector<Out> map_serial(const std::vector<double>& grid, Fn&& fn) {
  std::vector<Out> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid[i]);
  return out;
}

template <typename Out, typename Fn>
std::vector<Out> map_parallel(const std::vector<double>& grid, Fn&& fn) {
  std::vector<Out> out(grid.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = fn(grid[i]);
    } catch (...) {
#pragma omp critical(vpt_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

namespace serial {

std::vector<ResummedEnergy> variational_sweep(const VariationalApproximant& appr,
                                              const std::vector<double>& grid) {
  return map_serial<ResummedEnergy>(grid, [&](double g) { return evaluate(appr, g); });
}

std::vector<ResummedEnergy> corrected_sweep(const CorrectedApproximant& appr,
                                            const std::vector<double>& grid) {
  return map_serial<ResummedEnergy>(grid, [&](double g) { return appr(g); });
}

std::vector<double> oracle_sweep(const std::vector<double>& grid, double omega, const OracleConfig& config) {
  return map_serial<double>(grid, [&](double g) { return exact_energy(g, omega, config); });
}

}  // namespace serial

namespace parallel {

std::vector<ResummedEnergy> variational_sweep(const VariationalApproximant& appr,
                                              const std::vector<double>& grid) {
  return map_parallel<ResummedEnergy>(grid, [&](double g) { return evaluate(appr, g); });
}

std::vector<ResummedEnergy> corrected_sweep(const CorrectedApproximant& appr,
                                            const std::vector<double>& grid) {
  return map_parallel<ResummedEnergy>(grid, [&](double g) { return appr(g); });
}

std::vector<double> oracle_sweep(const std::vector<double>& grid, double omega, const OracleConfig& config) {
  return map_parallel<double>(grid, [&](double g) { return exact_energy(g, omega, config); });
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace parallel

}  // namespace vpt
