#include "fracspec/laplacian.hpp"
#include "fracspec/limit.hpp"
#include "fracspec/perturbation.hpp"
#include "fracspec/registry.hpp"

#include <benchmark/benchmark.h>

using namespace fracspec;

static void BM_JacobiRandom(benchmark::State& state) {
  TrialEngine engine(1);
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)), engine);
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a, 1e-12));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiRandom)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

static void BM_LevelSpectrumSG(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(level_spectrum(sg_spec(), m, Convention::combinatorial, Boundary::neumann, 1e-12));
  }
}
BENCHMARK(BM_LevelSpectrumSG)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_EigenvalueLimit(benchmark::State& state) {
  const auto& sg = Registry::builtin().get("sg");
  const auto bits = static_cast<unsigned>(state.range(0));
  PrecisionGuard guard(bits + 32);
  const Real lambda0(2);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalue_limit(sg, 1, lambda0, 1e-10, bits));
}
BENCHMARK(BM_EigenvalueLimit)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

static void BM_GenerateSpectrum(benchmark::State& state) {
  const auto& sg = Registry::builtin().get("sg");
  SpectrumOptions o;
  o.bc = Boundary::dirichlet;
  o.count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate_spectrum(sg, o));
}
BENCHMARK(BM_GenerateSpectrum)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_BuildLevel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_level(sg3_spec(), static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildLevel)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
