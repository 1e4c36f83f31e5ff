#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lindeberg/distributions.hpp"
#include "lindeberg/lindeberg.hpp"
#include "lindeberg/monte_carlo.hpp"
#include "oracles.hpp"

using namespace lindeberg;

namespace {

McOptions opts(std::size_t R, const char* id, unsigned threads = 0) {
  McOptions o;
  o.replicates = R;
  o.master_seed = 12345;
  o.experiment_id = id;
  o.threads = threads;
  return o;
}

}  // namespace

TEST(GapReport, PassedRule) {
  GapReport r;
  r.mc_gap = 0.5;
  r.std_error = 0.1;
  r.theoretical_bound = 0.2;
  EXPECT_TRUE(r.passed());
  r.mc_gap = 0.51;
  EXPECT_FALSE(r.passed());
  r.mc_gap = NAN;
  EXPECT_FALSE(r.passed());
}

TEST(McGap, IdenticalLawsWithinNoise) {
  const std::size_t n = 30;
  MeanFunction f(n);
  const auto g = TestFunction::sine();
  for (const auto& s : {DistributionSpec::gaussian(), DistributionSpec::uniform()}) {
    std::vector<DistributionSpec> xs(n, s);
    const auto r = mc_gap(f, g, xs, xs, 0.0, opts(5000, "same"));
    EXPECT_LE(r.mc_gap, 3 * r.std_error) << s.name();
    EXPECT_GT(r.std_error, 0.0);
    EXPECT_EQ(r.replicates, 5000u);
    EXPECT_EQ(r.n, n);
  }
}

TEST(McGap, CltBoundDominance) {
  const std::size_t n = 400;
  MeanFunction f(n);
  const auto g = TestFunction::sine();
  const auto X = DistributionSpec::rademacher(), Y = DistributionSpec::gaussian();
  const double bound = c_constants(g).C2 * (1.0 + 2.0 * std::sqrt(2.0 / std::numbers::pi)) / 20.0;
  std::vector<DistributionSpec> xs(n, X), ys(n, Y);
  const auto r = mc_gap(f, g, xs, ys, bound, opts(4000, "clt-test"));
  EXPECT_TRUE(r.passed()) << r.mc_gap << " vs " << bound;
}

// n = 1, f = identity: E g(X) computed independently for both laws.
TEST(McGap, ClippedSquareMatchesQuadrature) {
  MeanFunction f(1);
  const auto g = TestFunction::clipped_square(10.0);
  const double egx = 1.0;  // Rademacher: g(+-1) = 1
  const double egy = 2.0 * oracle::simpson(
      [&](double x) { return g.value(x) * oracle::phi(x); }, 0.0, 40.0);
  // the clipping beyond |x| = 10 moves E g(Z) off 1 by far less than MC noise
  EXPECT_NEAR(egy, 1.0, 1e-12);
  std::vector<DistributionSpec> xs{DistributionSpec::rademacher()};
  std::vector<DistributionSpec> ys{DistributionSpec::gaussian()};
  Statistic stat = [&](std::span<const double> x, std::span<double> out) {
    out[0] = f.value(x);
  };
  const auto ch = paired_monte_carlo(1, 1, stat, g, xs, ys, opts(20000, "clip"));
  EXPECT_EQ(ch[0].mean_gx, egx);
  EXPECT_LE(std::abs(ch[0].mean_gy - egy), 5 * std::sqrt(2.0 / 20000));
  EXPECT_LE(ch[0].gap(), 3 * ch[0].std_error);
}

TEST(McGap, ThreadCountDoesNotChangeResults) {
  const std::size_t n = 50;
  MeanFunction f(n);
  const auto g = TestFunction::hyperbolic_tangent();
  std::vector<DistributionSpec> xs(n, DistributionSpec::centered_exponential());
  std::vector<DistributionSpec> ys(n, DistributionSpec::gaussian());
  const auto a = mc_gap(f, g, xs, ys, 1.0, opts(777, "thr", 1));
  const auto b = mc_gap(f, g, xs, ys, 1.0, opts(777, "thr", 3));
  const auto c = mc_gap(f, g, xs, ys, 1.0, opts(777, "thr", 8));
  EXPECT_EQ(a.mc_gap, b.mc_gap);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.mc_gap, c.mc_gap);
  EXPECT_EQ(a.std_error, c.std_error);
}

TEST(McGap, Errors) {
  MeanFunction f(2);
  const auto g = TestFunction::sine();
  std::vector<DistributionSpec> xs(2, DistributionSpec::gaussian());
  std::vector<DistributionSpec> short_list(1, DistributionSpec::gaussian());
  EXPECT_THROW(mc_gap(f, g, xs, xs, 1.0, opts(99, "few")), std::invalid_argument);
  EXPECT_THROW(mc_gap(f, g, xs, short_list, 1.0, opts(100, "len")), std::invalid_argument);
}

TEST(ParallelFor, CoversEveryIndexAndPropagates) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t k) { hits[k] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t k) {
                              if (k == 7) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  EXPECT_GE(resolve_threads(0), 1u);
  EXPECT_EQ(resolve_threads(5), 5u);
}
