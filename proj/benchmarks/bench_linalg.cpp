#include <benchmark/benchmark.h>

#include <random>

#include "opcone/linalg.hpp"

using namespace opcone;

namespace {

HermitianMatrix random_hermitian(std::size_t d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HermitianMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, Complex(u(rng), i == j ? 0.0 : u(rng)));
  return m;
}

void BM_Eigenvalues(benchmark::State& state) {
  const HermitianMatrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}

void BM_EigHermitian(benchmark::State& state) {
  const HermitianMatrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}

void BM_ProjectPsd(benchmark::State& state) {
  const HermitianMatrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(project_psd(m));
}

void BM_Kron(benchmark::State& state) {
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const HermitianMatrix a = random_hermitian(d, 4);
  const HermitianMatrix b = random_hermitian(d, 5);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}

}  // namespace

BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_EigHermitian)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_ProjectPsd)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_Kron)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
