#include "bh/primality.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

void BM_PrimesUpTo(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bh::primes_up_to(limit));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_PrimesUpTo)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_SegmentedSieveWindow(benchmark::State& state) {
  const std::uint64_t lo = 1'000'000'000'000ULL;
  for (auto _ : state) {
    bh::SegmentedSieve sieve(lo, lo + 10'000'000, static_cast<std::size_t>(state.range(0)));
    bh::SieveSegment seg;
    std::uint64_t n = 0;
    while (sieve.next(seg)) n += seg.length;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SegmentedSieveWindow)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_IsPrime64(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<bh::u128> values(4096);
  for (auto& v : values) v = rng() | 1;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bh::is_prime(values[i++ & 4095]));
}
BENCHMARK(BM_IsPrime64);

void BM_IsPrime128(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<bh::u128> values(4096);
  for (auto& v : values) v = ((static_cast<bh::u128>(rng() >> 2) << 64) | rng()) | 1;
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bh::is_prime(values[i++ & 4095]));
}
BENCHMARK(BM_IsPrime128);

}  // namespace
