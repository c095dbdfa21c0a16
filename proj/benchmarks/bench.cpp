#include <benchmark/benchmark.h>

#include <cmath>

#include "renyi/gaussfilter.hpp"
#include "renyi/measure.hpp"
#include "renyi/partition.hpp"
#include "renyi/slopes.hpp"

using namespace renyi;

static void BM_SolveOmega(benchmark::State& state) {
  double a = 0.0;
  for (auto _ : state) {
    a = a > 0.99 ? 0.0 : a + 0.01;
    benchmark::DoNotOptimize(solve_omega(state.range(0) ? 2.0 : 0.5, a));
  }
}
BENCHMARK(BM_SolveOmega)->Arg(0)->Arg(1);

static void BM_BuildCascade(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_cascade(WeightProfile::block48(), 2.0, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildCascade)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Complexity();

static void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto m = build_cascade(WeightProfile::constant(0.5), 2.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(partition_enumerate(m, n, 3.0));
}
BENCHMARK(BM_Enumerate)->DenseRange(12, 20, 4);

static void BM_LqNorm(benchmark::State& state) {
  auto dm = discretize(build_cascade(WeightProfile::block48(), 2.0, 12), 12);
  const double eps = std::ldexp(1.0, -static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lq_norm_q(dm, eps, 2.0));
}
BENCHMARK(BM_LqNorm)->DenseRange(3, 10, 7)->Unit(benchmark::kMillisecond);

static void BM_Matuszewska(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto t = build_table(build_cascade(WeightProfile::block48(), 2.0, n), n, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(matuszewska_estimate(t, 48 * std::log(2.0), 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Matuszewska)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Complexity(benchmark::oNLogN)
    ->Unit(benchmark::kMillisecond);

static void BM_Convolve(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  auto dm = discretize(build_cascade(WeightProfile::constant(0.5), 2.0, depth), depth);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(dm, dm));
}
BENCHMARK(BM_Convolve)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
