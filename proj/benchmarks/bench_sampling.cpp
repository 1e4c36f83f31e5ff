#include <benchmark/benchmark.h>

#include "lindeberg/distributions.hpp"
#include "lindeberg/monte_carlo.hpp"
#include "lindeberg/walks.hpp"

using namespace lindeberg;

static void BM_Fill(benchmark::State& state, DistributionSpec spec) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  std::uint64_t r = 0;
  for (auto _ : state) {
    auto g = RandomStream::derive(1, 2, r++, 0);
    spec.fill(g, x);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Fill, rademacher, DistributionSpec::rademacher())->Arg(400);
BENCHMARK_CAPTURE(BM_Fill, gaussian, DistributionSpec::gaussian())->Arg(400);
BENCHMARK_CAPTURE(BM_Fill, pareto, DistributionSpec::pareto(3.5))->Arg(400);

static void BM_CltGap(benchmark::State& state) {
  const std::size_t n = 400;
  MeanFunction f(n);
  std::vector<DistributionSpec> xs(n, DistributionSpec::rademacher());
  std::vector<DistributionSpec> ys(n, DistributionSpec::gaussian());
  McOptions o;
  o.replicates = static_cast<std::size_t>(state.range(0));
  o.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_gap(f, TestFunction::sine(), xs, ys, 1.0, o));
  }
}
BENCHMARK(BM_CltGap)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MaxPartialSums(benchmark::State& state) {
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  auto g = RandomStream::derive(3, 3, 3, 3);
  DistributionSpec::gaussian().fill(g, x);
  for (auto _ : state) benchmark::DoNotOptimize(max_partial_sums(x));
}
BENCHMARK(BM_MaxPartialSums)->Arg(400)->Arg(1600);
