#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "ardt/split_criteria.hpp"
#include "ardt/synth.hpp"
#include "ardt/tree.hpp"

namespace {

void BM_RenyiEntropy(benchmark::State& state) {
  const ardt::ClassDistribution dist{90, 10};
  double alpha = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ardt::renyi_entropy(dist, {alpha}));
    alpha = alpha > 2.0 ? 0.0 : alpha + 0.01;
  }
}
BENCHMARK(BM_RenyiEntropy);

void BM_FindAlpha(benchmark::State& state) {
  const auto prior = ardt::from_p1(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(ardt::find_alpha(prior));
}
BENCHMARK(BM_FindAlpha)->Arg(5)->Arg(30)->Arg(45);

void BM_BestSplit(benchmark::State& state) {
  ardt::SynthSpec s;
  s.n = static_cast<std::size_t>(state.range(0));
  s.m = 8;
  s.mu = 0.1;
  s.seed = 7;
  const ardt::Dataset d = ardt::generate(s);
  std::vector<std::size_t> rows(d.rows());
  std::iota(rows.begin(), rows.end(), 0);
  const auto criterion = static_cast<ardt::Criterion>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ardt::best_split(d, rows, criterion, 0.5));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.rows()));
}
BENCHMARK(BM_BestSplit)
    ->ArgsProduct({{1000, 10000},
                   {static_cast<int>(ardt::Criterion::Shannon), static_cast<int>(ardt::Criterion::Hellinger),
                    static_cast<int>(ardt::Criterion::AdaptiveRenyi)}});

}  // namespace
