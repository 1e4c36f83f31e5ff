#include <benchmark/benchmark.h>

#include "lindeberg/distributions.hpp"
#include "lindeberg/sk_model.hpp"
#include "lindeberg/smoothmax.hpp"

using namespace lindeberg;

static std::vector<double> couplings(const CouplingLayout& L) {
  std::vector<double> x(L.coordinates());
  auto g = RandomStream::derive(7, 7, 0, 0);
  DistributionSpec::gaussian().fill(g, x);
  return x;
}

static void BM_FreeEnergyGray(benchmark::State& state) {
  const CouplingLayout L(static_cast<std::size_t>(state.range(0)));
  const auto x = couplings(L);
  for (auto _ : state) benchmark::DoNotOptimize(free_energy(L, SKParams{}, x));
}
BENCHMARK(BM_FreeEnergyGray)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

// Same quantity through the generic soft-max (direct member evaluation).
static void BM_FreeEnergySoftMax(benchmark::State& state) {
  const std::size_t N = static_cast<std::size_t>(state.range(0));
  const SKFamily fam(N, SKParams{});
  const auto x = couplings(fam.layout());
  for (auto _ : state) benchmark::DoNotOptimize(softmax_value(fam, double(N), x));
}
BENCHMARK(BM_FreeEnergySoftMax)->DenseRange(8, 16, 4)->Unit(benchmark::kMicrosecond);

static void BM_GroundState(benchmark::State& state) {
  const CouplingLayout L(static_cast<std::size_t>(state.range(0)));
  const auto x = couplings(L);
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(L, x).value);
}
BENCHMARK(BM_GroundState)->DenseRange(10, 18, 4)->Unit(benchmark::kMicrosecond);
