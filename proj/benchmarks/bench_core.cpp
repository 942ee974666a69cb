#include <benchmark/benchmark.h>

#include "wavestab/continuation.hpp"
#include "wavestab/random.hpp"
#include "wavestab/stability.hpp"

using namespace wavestab;

static void BM_TransformRoundTrip(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  const SpectralFunction f = random_mean_free(rng, n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(from_samples(to_samples(f, 4 * n), n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TransformRoundTrip)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_Multiply(benchmark::State& state) {
  Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const SpectralFunction f = random_mean_free(rng, n, 1.0);
  const SpectralFunction g = random_mean_free(rng, n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(f, g));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Multiply)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_Residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WaveParameters p = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
  const WaveState s(p, SpectralFunction::harmonic_cos(1, 0.01, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual(s));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Residual)->RangeMultiplier(2)->Range(32, 256)->Complexity();

static void BM_NewtonPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WaveParameters base = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
  for (auto _ : state) {
    WaveState seed(base, SpectralFunction::harmonic_cos(1, 0.01, n));
    benchmark::DoNotOptimize(newton_solve(seed, 1, 0.01));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_NewtonPoint)->RangeMultiplier(2)->Range(32, 256)
    ->Unit(benchmark::kMillisecond)->Complexity();

static void BM_JacobiEigen(benchmark::State& state) {
  Rng rng(3);
  const int n = static_cast<int>(state.range(0));
  DenseMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = rng.uniform(-1, 1);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eigensolve(a));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_JacobiEigen)->RangeMultiplier(2)->Range(16, 128)
    ->Unit(benchmark::kMillisecond)->Complexity();

static void BM_TransformedOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  WaveParameters base = WaveParameters::trivial(1, 1, 1, critical_mu(1, 1, 1));
  WaveState seed(base, SpectralFunction::harmonic_cos(1, 0.01, 64));
  const BranchPoint pt = newton_solve(seed, 1, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_transformed_operator(pt.state, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TransformedOperator)->RangeMultiplier(2)->Range(16, 64)
    ->Unit(benchmark::kMillisecond)->Complexity();

BENCHMARK_MAIN();
