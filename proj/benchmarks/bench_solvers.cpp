#include <benchmark/benchmark.h>

#include "pca/solvers.hpp"

namespace {

void BM_SplitStepDirac(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto cfg = pca::make_lattice(1.0, m, 1000);
  const auto profile = pca::PotentialProfile::homogeneous(1.0, m, 0.2);
  const auto phi = pca::nonrel_embed(pca::gaussian_packet(cfg, 0, m / 2.0, m / 8.0, 0.02), 0.2);
  const pca::SplitStepDirac prop(profile, 4);
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(phi, 100.0));
}
BENCHMARK(BM_SplitStepDirac)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DenseDiracSetup(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto profile = pca::PotentialProfile::homogeneous(1.0, m, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(pca::DenseDiracPropagator(profile));
}
BENCHMARK(BM_DenseDiracSetup)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SchrodingerSetup(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto profile = pca::PotentialProfile::homogeneous(1.0, m, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(pca::SchrodingerPropagator(profile));
}
BENCHMARK(BM_SchrodingerSetup)->Arg(256)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
