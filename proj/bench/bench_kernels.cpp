// Serial reference vs OpenMP for the two hot loops: per-function Catoni risks and
// per-replication tail simulation.

#include <benchmark/benchmark.h>

#include "catoni/distributions.hpp"
#include "catoni/erm.hpp"
#include "catoni/experiments.hpp"

namespace {

using namespace catoni;

LossMatrix make_losses(std::size_t members, std::size_t n) {
  const RegressionModel model{{{1.02}, 0.0}, {Family::student_t, 4.5, 1.0, 0.0}};
  RngStream s = derive_stream(1, 0);
  const Dataset data = draw_dataset(model, s, n);
  return loss_matrix(FunctionClass::slope_grid(-2.45, 2.45, members), data.features, data.targets,
                     LossKind::squared);
}

Execution execution_for(int workers) {
  return workers == 0 ? Execution::serial_reference() : Execution::with_workers(workers);
}

void BM_CatoniRisks(benchmark::State& state) {
  const auto losses = make_losses(200, 2000);
  CatoniConfig config;
  config.alpha = 0.05;
  const Execution exec = execution_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(catoni_risk_per_function(losses, config, exec));
  state.SetItemsProcessed(state.iterations() * 200);
}
// Arg 0 is the serial reference; other args are OpenMP worker counts.
BENCHMARK(BM_CatoniRisks)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_TailExperiment(benchmark::State& state) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::tail;
  c.dist = standardized({Family::student_t, 3.0, 1.0, 0.0});
  c.n = 500;
  c.replications = 1000;
  c.execution = execution_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_tail_experiment(c));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TailExperiment)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
