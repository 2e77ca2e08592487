#include <benchmark/benchmark.h>

#include "ordlab/cylinder.hpp"
#include "ordlab/fbm.hpp"

namespace {

void BM_CylinderExact(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const std::size_t nodes = state.range(1);
  const ordlab::GridPath center = ordlab::simulate_brownian(n, 7);
  const ordlab::CylinderSpec spec{center, 0.5};
  for (auto _ : state) {
    auto r = ordlab::cylinder_log_measure_exact(spec, nodes);
    benchmark::DoNotOptimize(r.log_p);
  }
}

void BM_CylinderMc(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const ordlab::GridPath center = ordlab::simulate_brownian(n, 7);
  const ordlab::CylinderSpec spec{center, 0.5};
  for (auto _ : state) {
    auto r = ordlab::cylinder_log_measure_mc(spec, {100000, 11, 64, 1});
    benchmark::DoNotOptimize(r.log_p);
  }
}

}  // namespace

BENCHMARK(BM_CylinderExact)
    ->Args({8, 256})
    ->Args({64, 256})
    ->Args({256, 256})
    ->Args({64, 512})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CylinderMc)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
