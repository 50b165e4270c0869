#include <benchmark/benchmark.h>

#include "conifold/polyroots.hpp"

using namespace conifold;

// all_roots on the diagonal family (m, m); degree (m+1)^2.
static void BM_AllRootsDouble(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto u = reduced_polynomial(params_from_mk(m, m));
  for (auto _ : state) benchmark::DoNotOptimize(all_roots(u));
  state.counters["degree"] = u.degree();
  state.SetComplexityN(u.degree());
}
BENCHMARK(BM_AllRootsDouble)->DenseRange(1, 13, 2)->Complexity();

static void BM_AllRootsNoCrossCheck(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto u = reduced_polynomial(params_from_mk(m, m));
  RootConfig cfg;
  cfg.cross_check = false;
  for (auto _ : state) benchmark::DoNotOptimize(all_roots(u, cfg));
  state.counters["degree"] = u.degree();
}
BENCHMARK(BM_AllRootsNoCrossCheck)->DenseRange(1, 13, 2);

static void BM_AllRootsExtended(benchmark::State& state) {
  const auto u = reduced_polynomial(params_from_mk(5, 5));
  RootConfig cfg;
  cfg.precision = Precision::Extended;
  cfg.mantissa_bits = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(all_roots(u, cfg));
}
BENCHMARK(BM_AllRootsExtended)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_CompanionEigenvalues(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto u = reduced_polynomial(params_from_mk(m, m));
  for (auto _ : state) benchmark::DoNotOptimize(companion_eigenvalues(u));
  state.counters["degree"] = u.degree();
}
BENCHMARK(BM_CompanionEigenvalues)->DenseRange(1, 13, 4);

static void BM_PositiveRoot(benchmark::State& state) {
  const auto p = params_from_mk(10, 10);
  const auto u = reduced_polynomial(p);
  for (auto _ : state) benchmark::DoNotOptimize(find_positive_root(u, p));
}
BENCHMARK(BM_PositiveRoot);

static void BM_SquareFree(benchmark::State& state) {
  const auto u = reduced_polynomial(params_from_mk(10, 10));
  for (auto _ : state) benchmark::DoNotOptimize(square_free_certificate(u));
}
BENCHMARK(BM_SquareFree);
