#include <benchmark/benchmark.h>

#include "sphred/reduction.hpp"

using namespace sphred;

static void BM_VerifyItem(benchmark::State& state) {
  const auto& item = catalog().at(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(*item.pair, item.structure).overall());
  state.SetLabel(item.key);
}
BENCHMARK(BM_VerifyItem)->DenseRange(0, 49, 7)->Unit(benchmark::kMillisecond);

static void BM_VerifyCatalog(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& item : catalog()) benchmark::DoNotOptimize(verify(*item.pair, item.structure).overall());
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);

static void BM_F1(benchmark::State& state) {
  const auto& item = catalog_lookup("table3/empty");
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_F1(*item.pair, item.structure, n));
}
BENCHMARK(BM_F1)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
