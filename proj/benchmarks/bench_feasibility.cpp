#include <benchmark/benchmark.h>

#include "opcone/opcone.hpp"

using namespace opcone;

namespace {

void BM_M2Remark(benchmark::State& state) {
  const InterpolationInstance inst = catalog::lattice_instance();
  for (auto _ : state) benchmark::DoNotOptimize(ambient_interpolate(inst));
}

void BM_FivePointMax(benchmark::State& state) {
  const TensorElement u = catalog::five_point_element();
  for (auto _ : state) benchmark::DoNotOptimize(max_positive(u, false));
}

void BM_SeparatingNumeric(benchmark::State& state) {
  // Same LP as the exact path, forced through the numeric solver.
  const InterpolationInstance inst = catalog::separating_instance();
  SolverConfig config;
  config.exact_diagonal = false;
  for (auto _ : state) benchmark::DoNotOptimize(subsystem_interpolate(inst, config));
}

void BM_RandomInterpolation(benchmark::State& state) {
  const std::size_t level = static_cast<std::size_t>(state.range(0));
  const std::vector<std::size_t> sizes{2, 2};
  const OperatorSubsystem system = block_diagonal_algebra(sizes);
  std::size_t i = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const InterpolationInstance inst = random_instance(system, 2, 2, level, 1e-6, trial_seed(11, i++));
    state.ResumeTiming();
    benchmark::DoNotOptimize(subsystem_interpolate(inst));
  }
}

void BM_TrCheckDiagonal(benchmark::State& state) {
  const OperatorSubsystem system = diagonal_algebra(4);
  for (auto _ : state) benchmark::DoNotOptimize(tr_property_check(system, 2, 2, 1, 10, 3));
}

}  // namespace

BENCHMARK(BM_M2Remark)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FivePointMax)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SeparatingNumeric)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomInterpolation)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrCheckDiagonal)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
