#include <benchmark/benchmark.h>

#include "gcrkit/expr.hpp"
#include "gcrkit/jet.hpp"

using namespace gcrkit;

static void BM_JetProduct(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = sin(jet_variable(0, 0.3, 3, order)) + jet_variable(1, 0.7, 3, order);
  const Jet b = cos(jet_variable(2, 1.1, 3, order)) * jet_variable(0, 0.3, 3, order);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetProduct)->DenseRange(1, 4);

static void BM_JetElementary(benchmark::State& state) {
  const Jet x = jet_variable(0, 0.4, 3, 3) * jet_variable(1, 1.2, 3, 3) + jet_variable(2, 0.5, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exp(x));
    benchmark::DoNotOptimize(atan2(x, x + 2.0));
    benchmark::DoNotOptimize(sqrt(x));
  }
}
BENCHMARK(BM_JetElementary);

static void BM_ExprParse(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(Expr::parse("(2+cos(s))*sin(t)^2 - atan2(u, s+1)/sqrt(1+s^2)", {"s", "t", "u"}));
  }
}
BENCHMARK(BM_ExprParse);

static void BM_ExprEvalJet(benchmark::State& state) {
  const Expr e = Expr::parse("(2+cos(s))*sin(t)^2 - atan2(u, s+1)/sqrt(1+s^2)", {"s", "t", "u"});
  const std::vector<Jet> env{jet_variable(0, 0.4, 3, 3), jet_variable(1, 1.2, 3, 3), jet_variable(2, 0.5, 3, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(e.eval(env));
}
BENCHMARK(BM_ExprEvalJet);
BENCHMARK_MAIN();
