#include <benchmark/benchmark.h>

#include "torbound/arith.hpp"

namespace {

using namespace torbound;

void BM_PrimePi(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prime_pi(x));
}
BENCHMARK(BM_PrimePi)->Arg(1 << 16)->Arg(1 << 20)->Arg(10'000'000);

void BM_Factorize(benchmark::State& state) {
  // A semiprime just past the small-prime sieve.
  const std::uint64_t n = 1000003ull * 1000033ull;
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_Factorize);

void BM_TotientSieve(benchmark::State& state) {
  const auto limit = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(totients_up_to(limit));
}
BENCHMARK(BM_TotientSieve)->Arg(100'000)->Arg(1'000'000);

void BM_PhiLowerConstant(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_lower_constant(Rational(1, 4), 100'000));
}
BENCHMARK(BM_PhiLowerConstant);

}  // namespace
