#include <benchmark/benchmark.h>

#include "torbound/orbits.hpp"

namespace {

using namespace torbound;

void BM_OrbitPartitionPoints(benchmark::State& state) {
  const auto l = static_cast<std::uint32_t>(state.range(0));
  const GroupAction action(l, standard_generators(SubgroupKind::CartanNsPlus, l));
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit_partition(action, ActionKind::Point));
}
BENCHMARK(BM_OrbitPartitionPoints)->Arg(41)->Arg(53);

void BM_OrbitPartitionSubgroups(benchmark::State& state) {
  const auto l = static_cast<std::uint32_t>(state.range(0));
  const GroupAction action(l, standard_generators(SubgroupKind::CartanNsPlus, l));
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit_partition(action, ActionKind::Subgroup));
}
BENCHMARK(BM_OrbitPartitionSubgroups)->Arg(41)->Arg(53);

void BM_CyclicSubgroupLabels(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_subgroups(n));
}
BENCHMARK(BM_CyclicSubgroupLabels)->Arg(60)->Arg(210);

}  // namespace
