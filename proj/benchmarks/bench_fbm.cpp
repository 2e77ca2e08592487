#include <benchmark/benchmark.h>

#include "ordlab/fbm.hpp"

namespace {

void BM_FbmCholesky(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ordlab::FbmGenerator gen(0.3, n, ordlab::FbmMethod::cholesky);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto p = gen.generate(seed++);
    benchmark::DoNotOptimize(p.values.back());
  }
}

void BM_FbmCirculant(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ordlab::FbmGenerator gen(0.3, n, ordlab::FbmMethod::circulant);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto p = gen.generate(seed++);
    benchmark::DoNotOptimize(p.values.back());
  }
}

}  // namespace

BENCHMARK(BM_FbmCholesky)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FbmCirculant)
    ->Arg(1024)
    ->Arg(16384)
    ->Arg(65536)
    ->Unit(benchmark::kMicrosecond);
