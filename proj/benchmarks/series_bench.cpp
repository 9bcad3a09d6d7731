#include <benchmark/benchmark.h>

#include "sphred/reduction.hpp"
#include "sphred/series.hpp"

using namespace sphred;

namespace {

ToyModule<Rational> module_for(const SphericalPair& pair) {
  ToyModule<Rational> m;
  int r = pair.h_rank();
  std::vector<Rational> chi(r, make_rational(1, 5));
  IntVec zero(r, 0), e0(r, 0);
  if (r > 0) e0[0] = 1;
  m.coefficient.terms.push_back({1, chi, {{zero, Rational(1)}, {e0, Rational(2)}}});
  return m;
}

}  // namespace

static void BM_Reduce(benchmark::State& state) {
  auto pair = catalog_pair("sp6sp4");
  auto structures = catalog_structures("sp6sp4");
  auto m = module_for(*pair);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(m, *pair, {0, Sector::None}, structures));
}
BENCHMARK(BM_Reduce)->Unit(benchmark::kMillisecond);

static void BM_Expand(benchmark::State& state) {
  auto pair = catalog_pair("sp6sp4");
  auto structures = catalog_structures("sp6sp4");
  auto rs = reduce(module_for(*pair), *pair, {0, Sector::None}, structures);
  Int n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(expand(rs, n));
}
BENCHMARK(BM_Expand)->RangeMultiplier(2)->Range(5, 20)->Unit(benchmark::kMillisecond);

static void BM_ReduceFamily(benchmark::State& state) {
  auto pair = catalog_pair("triple");
  auto structures = catalog_structures("triple");
  ToyModule<LaurentU> m;
  m.coefficient.terms.push_back({LaurentU(1), {LaurentU::u() * make_rational(1, 10)}, {{IntVec{0}, LaurentU(1)}}});
  for (auto _ : state)
    for (auto cone : {StdConeId{0, Sector::None}, StdConeId{1, Sector::None}})
      benchmark::DoNotOptimize(reduce(m, *pair, cone, structures));
}
BENCHMARK(BM_ReduceFamily);
