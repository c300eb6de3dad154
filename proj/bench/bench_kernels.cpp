// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "phaseinv/forward_solver.hpp"
#include "phaseinv/global_min.hpp"

using namespace phaseinv;

namespace {

const ScatteringObjective& objective() {
  static const ScatteringObjective f(phase_shifts(LayeredPotential({8.0}, {-10.0}), 2.5, 30));
  return f;
}

const std::vector<Configuration>& batch() {
  static const auto b = generate_batch(AdmissibleBox{}, 2000, 1, 1);
  return b;
}

const std::vector<Configuration>& starts() {
  static const auto s = std::vector<Configuration>(batch().begin(), batch().begin() + 16);
  return s;
}

void BM_EvaluateBatchSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch_serial(objective(), batch()));
  state.SetItemsProcessed(state.iterations() * batch().size());
}

void BM_EvaluateBatch(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(objective(), batch(), workers));
  state.SetItemsProcessed(state.iterations() * batch().size());
}

void BM_LocalSearchesSerial(benchmark::State& state) {
  IrrsParams p;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_local_searches_serial(objective(), starts(), AdmissibleBox{}, p, 1));
  state.SetItemsProcessed(state.iterations() * starts().size());
}

void BM_LocalSearches(benchmark::State& state) {
  IrrsParams p;
  p.workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(run_local_searches(objective(), starts(), AdmissibleBox{}, p, 1));
  state.SetItemsProcessed(state.iterations() * starts().size());
}

}  // namespace

BENCHMARK(BM_EvaluateBatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateBatch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LocalSearchesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LocalSearches)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
