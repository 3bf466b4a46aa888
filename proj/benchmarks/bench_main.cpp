#include <benchmark/benchmark.h>

#include "pbtlab/pbtlab.hpp"

using namespace pbtlab;

static void BM_EigHermitian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HermitianOp avg = make_ensemble(SignalKind::eta, n, {0.5, 0.3}).average_unnormalized;
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(avg));
  state.SetLabel("dim " + std::to_string(avg.dim()));
}
BENCHMARK(BM_EigHermitian)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

static void BM_Pgm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SignalEnsemble e = make_ensemble(SignalKind::eta, n, {0.5, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(pgm(e));
}
BENCHMARK(BM_Pgm)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

static void BM_NoiseAdaptedFidelity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const SignalEnsemble e = make_ensemble(SignalKind::eta, n, {0.5, 0.0});
    benchmark::DoNotOptimize(ent_fidelity(pgm(e), e));
  }
}
BENCHMARK(BM_NoiseAdaptedFidelity)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_FCorr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f_corr(n));
}
BENCHMARK(BM_FCorr)->Arg(9)->Arg(400)->Arg(10000);

static void BM_ClosedFormSurface(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0;
    for (int a = 0; a <= 100; ++a)
      for (int b = 0; b <= 100; ++b) acc += fidelity_noiseless_povm(9, {a / 100.0, 3.14159 * b / 100});
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_ClosedFormSurface)->Unit(benchmark::kMillisecond);

static void BM_Chi(benchmark::State& state) {
  const SpinBosonParams p(2.0, state.range(0) / 10.0, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(chi(3.0, p));
}
BENCHMARK(BM_Chi)->Arg(1)->Arg(9)->Unit(benchmark::kMicrosecond);

static void BM_Phase(benchmark::State& state) {
  const SpinBosonParams p(2.0, 0.1, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(phase(8.0, p));
}
BENCHMARK(BM_Phase)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
