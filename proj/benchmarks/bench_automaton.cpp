#include <benchmark/benchmark.h>

#include "pca/automaton.hpp"
#include "pca/disorder.hpp"

namespace {

pca::DisorderField tunneling_field(int m_t) {
  const auto cfg = pca::make_lattice(1.0, 1000, m_t);
  const std::vector<int> counts{95, 95, 95, 95, 120, 95, 95, 95, 95, 120};
  return pca::synthesize_disorder(pca::DisorderPlan::static_plan({100, 100}, m_t / 100, counts, 1), cfg);
}

void BM_BuildStepOperator(benchmark::State& state) {
  const auto field = tunneling_field(100);
  std::int64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pca::build_step_operator(field, t));
    t = (t + 1) % 100;
  }
}
BENCHMARK(BM_BuildStepOperator);

void BM_EvolveWave(benchmark::State& state) {
  const auto field = tunneling_field(1000);
  const auto q = pca::RealWave::delta(field.config(), 0, {});
  for (auto _ : state) benchmark::DoNotOptimize(pca::evolve_wave(q, field, 1000));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_EvolveWave)->Unit(benchmark::kMillisecond);

void BM_EvolveTrajectories(benchmark::State& state) {
  const auto field = tunneling_field(10000);
  const auto start = pca::TrajectoryState::start(field.config(), 0);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pca::evolve_trajectories(start, field, 10000, threads));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_EvolveTrajectories)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
