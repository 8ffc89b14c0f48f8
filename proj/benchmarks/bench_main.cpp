#include <benchmark/benchmark.h>

#include "rmf/euler.hpp"
#include "rmf/primes.hpp"
#include "rmf/sampler.hpp"
#include "rmf/verify.hpp"

namespace {

const rmf::PrimeTable& table() {
  static const rmf::PrimeTable t(10000000);
  return t;
}

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) {
    rmf::PrimeTable t(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(t.primes().size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sieve)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_RestrictedSum(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const rmf::RmfSampler s(rmf::Model::Steinhaus, seed++);
    benchmark::DoNotOptimize(rmf::restricted_sum(s, table(), x));
  }
}
BENCHMARK(BM_RestrictedSum)->Arg(100000)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMicrosecond);

void BM_EulerProduct(benchmark::State& state) {
  const rmf::RmfSampler s(rmf::Model::Steinhaus, 1);
  const auto factors = rmf::euler_factors(s, table().primes_in(0, double(state.range(0))));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmf::log_abs2_euler_product(rmf::Model::Steinhaus, factors, t));
    t += 0.01;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(factors.size()));
}
BENCHMARK(BM_EulerProduct)->Arg(1000)->Arg(100000);

void BM_V5(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const rmf::RmfSampler s(rmf::Model::Steinhaus, seed++);
    benchmark::DoNotOptimize(rmf::v5_integral(s, table(), x, {}).value);
  }
}
BENCHMARK(BM_V5)->Arg(100000)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_V1(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    const rmf::RmfSampler s(rmf::Model::Steinhaus, seed++);
    benchmark::DoNotOptimize(rmf::v1_variance(s, table(), x));
  }
}
BENCHMARK(BM_V1)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMicrosecond);

void BM_RoughIntegral(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmf::rough_integral_three_ways(table(), 1000000, 31.0, 0.0, {}));
  }
}
BENCHMARK(BM_RoughIntegral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
