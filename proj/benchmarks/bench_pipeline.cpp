#include <benchmark/benchmark.h>

#include "conifold/oracle.hpp"
#include "conifold/report.hpp"

using namespace conifold;

static void BM_RunFamily(benchmark::State& state) {
  const auto p = params_from_mk(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_family(p));
}
BENCHMARK(BM_RunFamily)->Args({1, 1})->Args({2, 3})->Args({5, 5})->Args({10, 10});

static void BM_Sweep(benchmark::State& state) {
  RunConfig cfg;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep({1, 10}, {1, 10}, cfg));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Serialize(benchmark::State& state) {
  const auto rep = run_family(params_from_mk(10, 10));
  for (auto _ : state) benchmark::DoNotOptimize(serialize(rep));
}
BENCHMARK(BM_Serialize);

static void BM_Oracle(benchmark::State& state) {
  const auto p = derive_params(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  OracleConfig cfg;
  cfg.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(multistart_critical_points(p, cfg));
}
BENCHMARK(BM_Oracle)->Args({2, 0})->Args({3, 1})->Args({4, 2})->Unit(benchmark::kMillisecond);
