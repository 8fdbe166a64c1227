#include "prefadapt/experiment.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace prefadapt;

ExperimentConfig bench_config(std::size_t n, std::size_t replications) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.m_raw = n;
  cfg.horizon = 100;
  cfg.replications = replications;
  cfg.seed = 42;
  cfg.generator = SituationGenerator::with_defaults(n, n);
  cfg.schedule.kind = ScheduleKind::kStep;
  cfg.schedule.epoch_length = 25;
  cfg.schedule.targets = {UnitPreference::uniform(n), UnitPreference::normalized(Vector::LinSpaced(n, 1.0, 2.0))};
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const ExperimentConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(cfg).traces.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.replications * cfg.horizon));
}

void BM_OpenMP(benchmark::State& state) {
  const ExperimentConfig cfg = bench_config(static_cast<std::size_t>(state.range(0)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg).traces.data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.replications * cfg.horizon));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OpenMP)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
