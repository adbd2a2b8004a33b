#include <benchmark/benchmark.h>

#include "ardt/linear.hpp"
#include "ardt/synth.hpp"
#include "ardt/tree.hpp"

namespace {

ardt::Dataset sample(std::size_t n) {
  ardt::SynthSpec s;
  s.n = n;
  s.m = 5;
  s.mu = 0.1;
  s.boundary = ardt::Boundary::Xor;
  s.seed = 11;
  return ardt::generate(s);
}

void BM_TrainTree(benchmark::State& state) {
  const ardt::Dataset d = sample(static_cast<std::size_t>(state.range(0)));
  ardt::TreeConfig cfg;
  cfg.criterion = static_cast<ardt::Criterion>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ardt::train(d, cfg));
}
BENCHMARK(BM_TrainTree)
    ->ArgsProduct({{500, 5000},
                   {static_cast<int>(ardt::Criterion::Shannon), static_cast<int>(ardt::Criterion::AdaptiveRenyi)}})
    ->Unit(benchmark::kMillisecond);

void BM_FitLogistic(benchmark::State& state) {
  const ardt::Dataset d = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ardt::fit_logistic_regression(d, {}));
}
BENCHMARK(BM_FitLogistic)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitLinear(benchmark::State& state) {
  const ardt::Dataset d = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ardt::fit_linear_regression(d, {}));
}
BENCHMARK(BM_FitLinear)->Arg(1000)->Arg(10000);

}  // namespace
