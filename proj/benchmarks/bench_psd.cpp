#include <benchmark/benchmark.h>

#include "graphpos/graph.hpp"
#include "graphpos/rng.hpp"
#include "graphpos/star_tree.hpp"
#include "graphpos/sym_matrix.hpp"
#include "graphpos/tree_matrix.hpp"

namespace {

using namespace graphpos;

void BM_TreeCheckPath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TreeMatrix a = random_psd_tree_matrix(path_graph(n), 1.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(tree_psd_eliminate(a, 1e-9));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TreeCheckPath)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oN);

void BM_TreeCheckRandomTree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const TreeMatrix a = random_psd_tree_matrix(random_tree(n, 11), 1.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(tree_psd_eliminate(a, 1e-9));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TreeCheckRandomTree)->RangeMultiplier(10)->Range(100, 100000)->Complexity(benchmark::oN);

void BM_StarCheck(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(3);
  StarMatrix s;
  s.p.push_back(0.0);
  for (std::size_t i = 0; i < d; ++i) {
    s.p.push_back(uniform_real(rng, 0.5, 2.0));
    s.alpha.push_back(uniform_real(rng, -1.0, 1.0));
    s.p[0] += s.alpha.back() * s.alpha.back() / s.p.back();
  }
  s.p[0] += 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(star_psd_check(s));
}
BENCHMARK(BM_StarCheck)->Arg(10)->Arg(100)->Arg(1000);

void BM_DenseSpectral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SymMatrix a = random_psd_with_pattern(path_graph(n), 1.0, 5);
  for (auto _ : state) benchmark::DoNotOptimize(is_psd(a));
}
BENCHMARK(BM_DenseSpectral)->Arg(10)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
