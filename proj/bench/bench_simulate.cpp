#include <benchmark/benchmark.h>

#include "edubandit/reference.hpp"
#include "edubandit/simulate.hpp"

namespace edubandit {
namespace {

ExperimentSpec bench_spec(AgentKind agent, int category) {
  ExperimentSpec spec;
  spec.agent = agent;
  spec.environment = make_category_env(category);
  spec.horizon = 500;
  spec.n_runs = 1000;
  spec.base_seed = 42;
  return spec;
}

void BM_SerialReference(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<AgentKind>(state.range(0)), 4);
  for (auto _ : state) {
    const auto trajectories = reference::run_experiment_serial(spec);
    benchmark::DoNotOptimize(reference::aggregate_serial(trajectories, spec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.n_runs * spec.horizon));
}

void BM_ParallelAggregate(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<AgentKind>(state.range(0)), 4);
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_and_aggregate(spec, workers));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.n_runs * spec.horizon));
}

void BM_SingleTrajectory(benchmark::State& state) {
  auto spec = bench_spec(static_cast<AgentKind>(state.range(0)), 2);
  std::uint64_t run = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trajectory(spec, run));
    run = (run + 1) % spec.n_runs;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(spec.horizon));
}

// range(0): 0 random, 1 epsilon-greedy, 2 ucb
BENCHMARK(BM_SerialReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelAggregate)
    ->ArgsProduct({{0, 1, 2}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingleTrajectory)->DenseRange(0, 2);

}  // namespace
}  // namespace edubandit

BENCHMARK_MAIN();
