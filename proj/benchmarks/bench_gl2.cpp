#include <benchmark/benchmark.h>

#include "torbound/gl2.hpp"

namespace {

using namespace torbound;

void BM_EnumerateFull(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(standard_subgroup(SubgroupKind::Full, n, 10'000'000));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(gl2_order(factorize(n))));
}
BENCHMARK(BM_EnumerateFull)->Arg(25)->Arg(49);

void BM_GenerateClosure(benchmark::State& state) {
  // BFS closure of SL2(Z/25) from the two transvections (order 37500).
  const std::vector<Mat2> gens{{25, {1, 1, 0, 1}}, {25, {1, 0, 1, 1}}};
  for (auto _ : state) benchmark::DoNotOptimize(generate(gens));
}
BENCHMARK(BM_GenerateClosure);

void BM_ContainsScalars(benchmark::State& state) {
  const auto g = standard_subgroup(SubgroupKind::CartanNsPlus, 53);
  for (auto _ : state) benchmark::DoNotOptimize(contains_scalars(g));
}
BENCHMARK(BM_ContainsScalars);

}  // namespace
