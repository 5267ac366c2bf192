#include <benchmark/benchmark.h>

#include "dipole/heun.hpp"
#include "dipole/numerics.hpp"
#include "dipole/oracle.hpp"
#include "dipole/quantize.hpp"

using namespace dipole;

namespace {

SystemParams unit_params() {
  SystemParams p;
  p.linear = p.kratzer_depth = p.kratzer_length = 1.0;
  return p;
}

void BM_SeriesCoefficients(benchmark::State& state) {
  const HeunParams hp{2.0 * 1.7, 0.9, 6.0, -2.4};
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(series_coefficients(hp, count));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesCoefficients)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_CubicRoots(benchmark::State& state) {
  const std::array<double, 4> c = {1.0, -6.0, 11.0, -6.0};
  for (auto _ : state) benchmark::DoNotOptimize(numerics::cubic_real_roots(c));
}
BENCHMARK(BM_CubicRoots);

void BM_AllowedFrequenciesCubic(benchmark::State& state) {
  const SystemParams p = unit_params();
  for (auto _ : state) benchmark::DoNotOptimize(allowed_frequencies_n1(p, 1, Frame::Static));
}
BENCHMARK(BM_AllowedFrequenciesCubic);

void BM_AllowedFrequenciesScan(benchmark::State& state) {
  const SystemParams p = unit_params();
  const int n = static_cast<int>(state.range(0));
  const Bracket br = default_bracket(p, 1, Frame::Static);
  for (auto _ : state) benchmark::DoNotOptimize(allowed_frequencies(p, n, 1, Frame::Static, br));
}
BENCHMARK(BM_AllowedFrequenciesScan)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  SystemParams p = unit_params();
  p.angular_velocity = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectrum(p, {1, 3}, {-3, 3}, Frame::Rotating));
  }
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMillisecond);

void BM_FdEigenvalues(benchmark::State& state) {
  const SystemParams p = unit_params();
  const double w = allowed_frequencies_n1(p, 0, Frame::Static).front();
  RadialGrid g = default_grid(p, 0, w, Frame::Static, 3);
  g.points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fd_eigenvalues(p, 0, w, Frame::Static, g, 3));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FdEigenvalues)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity()
    ->Unit(benchmark::kMillisecond);

void BM_FdEigensolve(benchmark::State& state) {
  const SystemParams p = unit_params();
  const double w = allowed_frequencies_n1(p, 0, Frame::Static).front();
  const RadialGrid g = default_grid(p, 0, w, Frame::Static, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fd_eigensolve(p, 0, w, Frame::Static, g, 3));
}
BENCHMARK(BM_FdEigensolve)->Unit(benchmark::kMillisecond);

void BM_OdeResidual(benchmark::State& state) {
  const SystemParams p = unit_params();
  const double w = allowed_frequencies_n1(p, 0, Frame::Static).front();
  const auto ys = linspace(0.01, 10.0, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(ode_residual(p, 0, Frame::Static, 1, w, ys));
}
BENCHMARK(BM_OdeResidual);

}  // namespace
BENCHMARK_MAIN();
