#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lindeberg/distributions.hpp"
#include "lindeberg/sk_model.hpp"
#include "lindeberg/smoothmax.hpp"

using namespace lindeberg;

namespace {

std::vector<double> draw(std::size_t n, std::uint64_t seed,
                         const DistributionSpec& s = DistributionSpec::gaussian()) {
  std::vector<double> x(n);
  auto g = RandomStream::derive(seed, 17, 0, 0);
  s.fill(g, x);
  return x;
}

Spins spins_of(std::uint64_t mask, std::size_t N) {
  Spins s(N);
  for (std::size_t i = 0; i < N; ++i) s[i] = (mask >> i) & 1 ? 1 : -1;
  return s;
}

// Every sigma, energies recomputed from scratch.
double brute_ground(std::size_t N, std::span<const double> x) {
  double best = -INFINITY;
  for (std::uint64_t m = 0; m < (1ull << N); ++m) {
    const auto s = spins_of(m, N);
    double e = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) e += x[k++] * s[i] * s[j];
    best = std::max(best, e);
  }
  return best;
}

double brute_free_energy(std::size_t N, const SKParams& p, std::span<const double> x) {
  const CouplingLayout L(N);
  std::vector<double> v;
  for (std::uint64_t m = 0; m < (1ull << N); ++m) {
    v.push_back(double(N) * family_member(L, p, spins_of(m, N), x));
  }
  const double mx = *std::max_element(v.begin(), v.end());
  double s = 0;
  for (double a : v) s += std::exp(a - mx);
  return (mx + std::log(s)) / double(N);
}

}  // namespace

TEST(CouplingLayout, RoundTrip) {
  const CouplingLayout L(6);
  EXPECT_EQ(L.coordinates(), 15u);
  for (std::size_t k = 0; k < 15; ++k) {
    const auto [i, j] = L.pair(k);
    EXPECT_LT(i, j);
    EXPECT_EQ(L.index(i, j), k);
  }
}

TEST(FamilyMember, Cases) {
  const CouplingLayout L2(2);
  const SKParams p{1.7, 0.0};
  std::vector<double> zero{0.0};
  EXPECT_EQ(family_member(L2, p, Spins{1, 1}, zero), 0.0);
  std::vector<double> x{0.9};
  EXPECT_DOUBLE_EQ(family_member(L2, p, Spins{1, 1}, x), 1.7 * std::pow(2.0, -1.5) * 0.9);
  const CouplingLayout L5(5);
  const auto y = draw(10, 1);
  Spins s{1, -1, -1, 1, 1}, t(5);
  std::transform(s.begin(), s.end(), t.begin(), [](std::int8_t v) { return std::int8_t(-v); });
  EXPECT_DOUBLE_EQ(family_member(L5, p, s, y), family_member(L5, p, t, y));
  EXPECT_THROW(SKParams::make(0.0, 0.0), std::invalid_argument);
}

TEST(FamilyLambda, Formulas) {
  const auto f = family_lambda(SKParams{1.0, 0.0}, 10);
  EXPECT_NEAR(f.lambda2, 1e-3, 1e-18);
  EXPECT_NEAR(f.lambda3, std::pow(10.0, -4.5), 1e-18);
  EXPECT_NEAR(f.log_size, 10 * std::log(2.0), 1e-15);
  const auto d = family_lambda(SKParams{2.0, 0.0}, 10);
  EXPECT_NEAR(d.lambda2, 4 * f.lambda2, 1e-18);
  EXPECT_NEAR(d.lambda3, 8 * f.lambda3, 1e-18);
}

TEST(FamilyLambda, EmpiricalEqualsAnalyticAtN6) {
  const std::size_t N = 6;
  const SKParams p{1.3, 0.4};
  SKFamily fam(N, p);
  const CouplingLayout L(N);
  std::vector<std::vector<double>> pts;
  for (std::uint64_t s = 0; s < 3; ++s) pts.push_back(draw(L.coordinates(), s));
  double l2 = 0, l3 = 0;
  for (std::uint64_t m = 0; m < (1ull << N); ++m) {
    const auto sig = spins_of(m, N);
    auto fn = [&](std::span<const double> x) { return family_member(L, p, sig, x); };
    for (const auto& x : pts) {
      for (std::size_t k = 0; k < L.coordinates(); ++k) {
        const double d1 = std::abs(fd_partial(fn, x, k, 1));
        l2 = std::max(l2, d1 * d1);
        l3 = std::max(l3, d1 * d1 * d1);
      }
    }
  }
  const auto f = family_lambda(p, N);
  EXPECT_NEAR(l2, f.lambda2, 1e-9 * f.lambda2);
  EXPECT_NEAR(l3, f.lambda3, 1e-9 * f.lambda3);
  const auto a = fam.analytic_lambda();
  EXPECT_NEAR(a.lambda2, f.lambda2, 1e-15);
  EXPECT_NEAR(a.lambda3, f.lambda3, 1e-18);
}

TEST(FreeEnergy, HandEnumerationN2) {
  const CouplingLayout L(2);
  const double beta = 0.8;
  for (double x12 : {-1.5, 0.0, 2.3}) {
    std::vector<double> x{x12};
    const double expect = 0.5 * std::log(4 * std::cosh(x12 * beta / std::sqrt(2.0)));
    EXPECT_NEAR(free_energy(L, SKParams{beta, 0.0}, x), expect, 1e-15);
  }
}

TEST(FreeEnergy, ZeroCouplingsFactorize) {
  for (std::size_t N : {3, 7}) {
    const CouplingLayout L(N);
    std::vector<double> x(L.coordinates(), 0.0);
    for (double h : {0.0, 0.5, -1.2}) {
      EXPECT_NEAR(free_energy(L, SKParams{1.4, h}, x), std::log(2 * std::cosh(1.4 * h)), 1e-14);
    }
  }
}

TEST(FreeEnergy, AgreesWithSoftMaxAndBruteForce) {
  for (std::size_t N : {3, 6, 9}) {
    const CouplingLayout L(N);
    const SKParams p{1.1, 0.3};
    SKFamily fam(N, p);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto x = draw(L.coordinates(), s);
      const double fe = free_energy(L, p, x);
      EXPECT_NEAR(fe, softmax_value(fam, double(N), x), 1e-12);
      EXPECT_NEAR(fe, brute_free_energy(N, p, x), 1e-12);
      double mx = -INFINITY;
      fam.for_each_value(x, [&](double v) { mx = std::max(mx, v); });
      EXPECT_GE(fe, mx);
      EXPECT_LE(fe, mx + std::log(2.0) + 1e-14);
    }
  }
}

TEST(FreeEnergy, InvariantUnderSpinRelabeling) {
  const std::size_t N = 5;
  const CouplingLayout L(N);
  const SKParams p{1.0, 0.4};
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = draw(L.coordinates(), s);
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    auto g = RandomStream::derive(s, 3, 0, 0);
    std::shuffle(perm.begin(), perm.end(), g);
    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
      const auto [i, j] = L.pair(k);
      y[L.index(std::min(perm[i], perm[j]), std::max(perm[i], perm[j]))] = x[k];
    }
    EXPECT_NEAR(free_energy(L, p, x), free_energy(L, p, y), 1e-13);
  }
}

// x -> -x maps each energy to its negative. That is a symmetry of the
// spectrum only for N = 2; from N = 3 on frustration breaks it.
TEST(FreeEnergy, GlobalNegationAtZeroField) {
  const SKParams p{1.0, 0.0};
  const CouplingLayout L2(2);
  for (double v : {-0.7, 0.4, 3.0}) {
    std::vector<double> x{v}, y{-v};
    EXPECT_NEAR(free_energy(L2, p, x), free_energy(L2, p, y), 1e-15);
  }
  for (std::size_t N : {3, 4, 6}) {
    const CouplingLayout L(N);
    auto x = draw(L.coordinates(), N);
    auto y = x;
    for (double& v : y) v = -v;
    EXPECT_NEAR(free_energy(L, p, y), brute_free_energy(N, p, y), 1e-13);
  }
  const CouplingLayout L3(3);
  std::vector<double> ones(3, 1.0), minus(3, -1.0);
  // energies {3, -1, -1, -1} vs {-3, 1, 1, 1}
  EXPECT_GT(free_energy(L3, p, ones), free_energy(L3, p, minus));
}

TEST(FreeEnergy, Guards) {
  const CouplingLayout L(25);
  std::vector<double> x(L.coordinates(), 0.0);
  EXPECT_THROW(free_energy(L, SKParams{}, x), std::invalid_argument);
  EXPECT_THROW(ground_state(L, x), std::invalid_argument);
}

TEST(FreeEnergyLambda, Formulas) {
  const auto b = free_energy_lambda(SKParams{1.0, 0.0}, 10);
  EXPECT_NEAR(b.lambda2, 0.03, 1e-16);
  EXPECT_NEAR(b.lambda3, 13 * std::pow(10.0, -2.5), 1e-16);
}

TEST(GroundState, AllOnes) {
  for (std::size_t N : {2, 5, 8}) {
    const CouplingLayout L(N);
    std::vector<double> x(L.coordinates(), 1.0);
    const auto gs = ground_state(L, x);
    EXPECT_EQ(gs.value, double(N * (N - 1) / 2));
    // lexicographically smallest of {all +1, all -1}
    for (auto s : gs.sigma) EXPECT_EQ(s, -1);
  }
}

TEST(GroundState, ThreeSpinsByBruteForce) {
  const CouplingLayout L(3);
  std::vector<double> x{1.0, -1.0, 1.0};
  const auto gs = ground_state(L, x);
  EXPECT_EQ(gs.value, brute_ground(3, x));
  EXPECT_EQ(gs.value, 1.0);
  EXPECT_EQ(pair_energy(L, gs.sigma, x), gs.value);
}

TEST(GroundState, HalfEnumerationEqualsBruteForce) {
  for (std::size_t N = 2; N <= 10; ++N) {
    const CouplingLayout L(N);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto x = draw(L.coordinates(), s + 100 * N,
                          s % 2 ? DistributionSpec::rademacher() : DistributionSpec::gaussian());
      const auto gs = ground_state(L, x);
      EXPECT_EQ(gs.value, brute_ground(N, x)) << "N=" << N;
      Spins flipped(gs.sigma);
      for (auto& v : flipped) v = std::int8_t(-v);
      EXPECT_EQ(pair_energy(L, flipped, x), gs.value);
    }
  }
}

TEST(GroundStateBound, Structure) {
  const auto g = TestFunction::hyperbolic_tangent();
  const auto rad = DistributionSpec::rademacher();
  const std::size_t N = 16;
  const auto params = GroundStateBoundParams::make(1.5, 0.5);  // eps sqrt(N) = 2
  const auto b = ground_state_bound(g, N, params, rad, rad);
  EXPECT_EQ(b.tail_term, 0.0);
  EXPECT_NEAR(b.inverse_A, 1 / 1.5, 1e-15);
  EXPECT_NEAR(b.smoothing_term, 1.5 * 1.5 * 0.5, 1e-15);
  // the same number through theorem3_bound
  const auto fl = family_lambda(SKParams{1.0, 0.0}, N);
  const auto sums = truncated_sums(rad, rad, N * (N - 1) / 2, 0.5 * 4.0);
  const double direct = theorem3_bound(g, 1.5 * N, fl.lambda2, fl.lambda3, fl.log_size,
                                       sums.T1K, sums.T2K);
  EXPECT_NEAR(b.value, direct, 1e-12 * direct);
  EXPECT_LE(b.value, b.constant * (b.inverse_A + b.tail_term + b.smoothing_term) * (1 + 1e-12));
  // Gaussian couplings: tail channel is live and still dominated
  const auto gb = ground_state_bound(g, N, params, DistributionSpec::gaussian(), rad);
  EXPECT_GT(gb.tail_term, 0.0);
  EXPECT_LE(gb.value, gb.constant * (gb.inverse_A + gb.tail_term + gb.smoothing_term) * (1 + 1e-12));
  EXPECT_THROW(GroundStateBoundParams::make(0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(GroundStateBoundParams::make(1.0, 0.0), std::invalid_argument);
}

TEST(GroundStateBound, SmallEpsilonLeavesInverseAFloor) {
  const auto g = TestFunction::sine();
  const auto rad = DistributionSpec::rademacher();
  const std::size_t N = 4000000;  // eps sqrt(N) = 2
  const auto b = ground_state_bound(g, N, GroundStateBoundParams::make(1.0, 1e-3), rad, rad);
  EXPECT_EQ(b.tail_term, 0.0);
  EXPECT_NEAR(b.inverse_A + b.tail_term + b.smoothing_term, 1.0, 1.1e-3);
  EXPECT_LE(b.value, b.constant * 1.001);
}

TEST(GroundStateBound, DecreasesAlongN) {
  const auto g = TestFunction::sine();
  const auto rad = DistributionSpec::rademacher();
  double prev = INFINITY;
  for (std::size_t N : {8, 12, 16}) {
    const auto b = ground_state_bound(g, N, GroundStateBoundParams::make(2.0, 1.0), rad, rad);
    EXPECT_LT(b.value, prev);
    prev = b.value;
    const auto c = corollary2_bound(g, ExtendedReal::finite(1.0), N * (N - 1) / 2,
                                    family_lambda(SKParams{}, N).lambda3,
                                    family_lambda(SKParams{}, N).log_size);
    EXPECT_GT(c.bound, 0.0);
  }
}

TEST(SKExperiment, SameLawWithinNoise) {
  McOptions o;
  o.replicates = 300;
  o.master_seed = 8;
  o.experiment_id = "sk-same";
  const auto g = TestFunction::hyperbolic_tangent();
  const auto s = DistributionSpec::gaussian();
  for (auto kind : {SKKind::FreeEnergy, SKKind::GroundState}) {
    const auto r = sk_experiment(kind, s, s, SKParams{1.0, 0.0}, 6, g, o);
    EXPECT_LE(r.report.mc_gap, 3 * r.report.std_error + 1e-15);
    EXPECT_TRUE(r.report.passed());
  }
  const auto heavy = sk_experiment(SKKind::FreeEnergy, DistributionSpec::pareto(2.5), s,
                                   SKParams{1.0, 0.0}, 6, g, o);
  EXPECT_EQ(heavy.bound_route, "theorem1");
  const auto light = sk_experiment(SKKind::GroundState, DistributionSpec::rademacher(), s,
                                   SKParams{1.0, 0.0}, 6, g, o);
  EXPECT_EQ(light.bound_route, "corollary2");
  EXPECT_THROW(sk_experiment(SKKind::GroundState, s, s, SKParams{1.0, 0.5}, 6, g, o),
               std::invalid_argument);
}
