#include <benchmark/benchmark.h>

#include "sphred/period.hpp"
#include "sphred/reduction.hpp"

using namespace sphred;

namespace {

ToyModule<Rational> geometric(const Rational& lambda) {
  ToyModule<Rational> m;
  m.coefficient.terms.push_back({1, {lambda}, {{IntVec{0}, Rational(1)}}});
  return m;
}

}  // namespace

static void BM_AssemblePeriod(benchmark::State& state) {
  auto pair = catalog_pair("triple");
  auto structures = catalog_structures("triple");
  auto cfg = default_volume(*pair, 3);
  auto m = geometric(make_rational(1, 5));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_period(m, *pair, cfg, structures));
}
BENCHMARK(BM_AssemblePeriod);

static void BM_BruteForce(benchmark::State& state) {
  auto pair = catalog_pair("triple");
  auto cfg = default_volume(*pair, 3);
  auto m = geometric(make_rational(1, 5));
  Int n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_period(m, *pair, cfg, n));
}
BENCHMARK(BM_BruteForce)->RangeMultiplier(4)->Range(10, 160);

static void BM_Margin(benchmark::State& state) {
  auto pair = catalog_pair("waldspurger");
  auto m = geometric(make_rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(temperedness_margin(m, *pair, 3));
}
BENCHMARK(BM_Margin);
