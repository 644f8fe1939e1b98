// Serial reference vs OpenMP kernels on the figure grids.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "vpt/sweep.hpp"

namespace {

using namespace vpt;

const PerturbationSeries& series() {
  static const auto s = PerturbationSeries::anharmonic_oscillator(4);
  return s;
}

const CorrectedApproximant& corrected3() {
  static const auto model = DiscontinuityModel::anharmonic_oscillator();
  static const CorrectedApproximant c(series(), model, 3, fixed_point_cutoff(3, series(), model).cutoff());
  return c;
}

const std::vector<double>& positive_grid() {
  static const auto g = make_grid(0.01, 1000.0, 121, GridKind::logarithmic);
  return g;
}

const std::vector<double>& negative_grid() {
  static const auto g = make_grid(-1.0, 0.0, 200, GridKind::linear, true);
  return g;
}

template <auto Kernel>
void variational(benchmark::State& state) {
  const auto w = build_reexpansion(series(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, negative_grid()));
  state.SetItemsProcessed(state.iterations() * negative_grid().size());
}

template <auto Kernel>
void corrected(benchmark::State& state) {
  const auto& c = corrected3();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c, negative_grid()));
  state.SetItemsProcessed(state.iterations() * negative_grid().size());
}

template <auto Kernel>
void oracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(positive_grid(), 1.0, OracleConfig{}));
  state.SetItemsProcessed(state.iterations() * positive_grid().size());
}

}  // namespace

BENCHMARK(variational<serial::variational_sweep>)->Name("variational/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(variational<parallel::variational_sweep>)->Name("variational/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(corrected<serial::corrected_sweep>)->Name("corrected/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(corrected<parallel::corrected_sweep>)->Name("corrected/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(oracle<serial::oracle_sweep>)->Name("oracle/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(oracle<parallel::oracle_sweep>)->Name("oracle/omp")->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::AddCustomContext("omp_threads", std::to_string(omp_get_max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
