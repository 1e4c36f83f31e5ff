#include <benchmark/benchmark.h>

#include "lindeberg/distributions.hpp"
#include "lindeberg/wigner.hpp"

using namespace lindeberg;

static std::vector<double> entries(const WignerLayout& L) {
  std::vector<double> x(L.coordinates());
  auto g = RandomStream::derive(5, 5, 0, 0);
  DistributionSpec::gaussian().fill(g, x);
  return x;
}

static void BM_Stieltjes(benchmark::State& state) {
  const WignerLayout L(static_cast<std::size_t>(state.range(0)));
  const auto x = entries(L);
  const SpectralPoint z(Complex(0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(stieltjes(L, x, z));
}
BENCHMARK(BM_Stieltjes)->Arg(8)->Arg(100)->Arg(200)->Unit(benchmark::kMicrosecond);

// All coordinates' (d1, d2, d3) from one factorization.
static void BM_AllPartials(benchmark::State& state) {
  const WignerLayout L(static_cast<std::size_t>(state.range(0)));
  const auto x = entries(L);
  const SpectralPoint z(Complex(0, 2));
  for (auto _ : state) {
    const Resolvent R(L, x, z);
    Complex acc = 0;
    for (std::size_t k = 0; k < L.coordinates(); ++k) acc += R.partials(k)[2];
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(L.coordinates()));
}
BENCHMARK(BM_AllPartials)->Arg(8)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
