#include <gtest/gtest.h>

#include <cmath>

#include "lindeberg/distributions.hpp"
#include "lindeberg/smoothmax.hpp"
#include "lindeberg/walks.hpp"
#include "oracles.hpp"

using namespace lindeberg;

TEST(MaxPartialSums, HandCases) {
  std::vector<double> ones(9, 1.0), minus(9, -1.0);
  EXPECT_DOUBLE_EQ(max_partial_sums(ones), 3.0);
  EXPECT_DOUBLE_EQ(max_partial_sums(minus), -1.0 / 3.0);
  std::vector<double> x{1, -2, 2};
  EXPECT_DOUBLE_EQ(max_partial_sums(x), 1 / std::sqrt(3.0));
  std::vector<double> none;
  EXPECT_THROW(max_partial_sums(none), std::invalid_argument);
}

TEST(WalkFamily, MembersArePrefixSums) {
  WalkFamily w(5);
  std::vector<double> x{0.5, -1, 2, 0.25, -3};
  std::vector<double> seen;
  w.for_each_value(x, [&](double v) { seen.push_back(v); });
  ASSERT_EQ(seen.size(), 5u);
  double s = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    s += x[i];
    EXPECT_NEAR(seen[i], s / std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(w.member(i + 1)->value(x), seen[i], 1e-15);
  }
  EXPECT_DOUBLE_EQ(*std::max_element(seen.begin(), seen.end()), max_partial_sums(x));
  EXPECT_NEAR(w.log_size(), std::log(5.0), 1e-15);
}

TEST(WalkFamily, MemberLambdaExact) {
  const std::size_t n = 25;
  WalkFamily w(n);
  std::vector<std::vector<double>> pts{std::vector<double>(n, 0.3), std::vector<double>(n, -2.0)};
  for (std::size_t i : {1, 7, 25}) {
    const auto e = estimate_lambda(*w.member(i), pts);
    EXPECT_DOUBLE_EQ(e.lambda3, std::pow(double(n), -1.5));
  }
}

TEST(ErdosKacBound, ArithmeticAndAgreement) {
  const auto g = TestFunction::sine();
  const double expect = 71.0 / 3.0 * (std::pow(400.0, -1.0 / 6) * std::pow(std::log(400.0), 2.0 / 3) + 0.05);
  EXPECT_NEAR(erdos_kac_bound(g, ExtendedReal::finite(1.0), 400), expect, 1e-12 * expect);
  for (std::size_t n : {2, 50, 1000}) {
    for (double gamma : {1.0, 1.6}) {
      const auto c = corollary2_bound(g, ExtendedReal::finite(gamma), n, WalkFamily(n));
      EXPECT_NEAR(erdos_kac_bound(g, ExtendedReal::finite(gamma), n), c.bound, 1e-12 * c.bound);
    }
  }
  double prev = INFINITY;
  for (std::size_t n = 16; n <= 1u << 20; n *= 2) {
    const double b = erdos_kac_bound(g, ExtendedReal::finite(1.6), n);
    EXPECT_LT(b, prev) << n;
    prev = b;
  }
  EXPECT_THROW(erdos_kac_bound(g, ExtendedReal::infinity(), 100), std::domain_error);
  EXPECT_THROW(erdos_kac_bound(g, ExtendedReal::finite(1.0), 1), std::invalid_argument);
}

TEST(HalfNormal, Reference) {
  EXPECT_EQ(half_normal_reference(0.0), 0.0);
  EXPECT_EQ(half_normal_reference(-1.0), 0.0);
  EXPECT_NEAR(half_normal_reference(40.0), 1.0, 1e-15);
  for (double t : {0.1, 1.0, 2.5}) {
    EXPECT_NEAR(half_normal_reference(t), 2 * oracle::normal_cdf(t) - 1, 1e-12);
  }
  EXPECT_NEAR(half_normal_reference(1.0), 0.6827, 1e-4);
}

double unit_uniform_cdf(double t) { return std::clamp(t, 0.0, 1.0); }

TEST(KsDistance, HandCases) {
  // empirical steps at 0.25, 0.5, 0.75 against U(0,1): sup gap 0.25
  EXPECT_NEAR(ks_distance({0.25, 0.5, 0.75}, unit_uniform_cdf), 0.25, 1e-15);
  EXPECT_NEAR(ks_distance({0.5}, unit_uniform_cdf), 0.5, 1e-15);
}

TEST(KsToHalfNormal, GaussianStepsConverge) {
  McOptions o;
  o.replicates = 2000;
  o.master_seed = 4;
  o.experiment_id = "ks";
  const double d = ks_to_half_normal(DistributionSpec::gaussian(), 400, o);
  EXPECT_LT(d, 0.08);
  EXPECT_GT(d, 0.0);
}

TEST(ErdosKacExperiment, SameLawWithinNoise) {
  McOptions o;
  o.replicates = 2000;
  o.master_seed = 5;
  o.experiment_id = "ek-same";
  const auto s = DistributionSpec::uniform();
  const auto r = erdos_kac_experiment(s, s, 50, TestFunction::sine(), o);
  EXPECT_LE(r.report.mc_gap, 3 * r.report.std_error);
  EXPECT_TRUE(r.report.passed());
}
