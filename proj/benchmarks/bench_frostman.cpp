#include <benchmark/benchmark.h>

#include "ordlab/frostman.hpp"
#include "ordlab/rng.hpp"

namespace {

ordlab::DyadicTree random_tree(int depth, double mark_rate, std::uint64_t seed) {
  ordlab::DyadicTree tree;
  tree.depth = depth;
  tree.arity = 2;
  ordlab::RandomStream rng(seed, 0);
  const std::uint64_t leaves = 1ull << depth;
  for (std::uint64_t leaf = 0; leaf < leaves; ++leaf)
    if (rng.uniform01() < mark_rate) tree.marked.push_back(leaf);
  if (tree.marked.empty()) tree.marked.push_back(0);
  return tree;
}

void BM_FrostmanSolve(benchmark::State& state) {
  const auto tree = random_tree(static_cast<int>(state.range(0)), 0.2, 5);
  const auto gauge = ordlab::GaugeSpec::parametric(1, 1, 0.7);
  for (auto _ : state) {
    auto sol = ordlab::max_frostman_mass(tree, gauge);
    benchmark::DoNotOptimize(sol.total_mass);
  }
}

}  // namespace

BENCHMARK(BM_FrostmanSolve)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);
