#include "lindeberg/sk_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lindeberg/lindeberg.hpp"

namespace lindeberg {

namespace {

void require_enumerable(std::size_t N) {
  if (N > kMaxEnumerationSpins) {
    throw std::invalid_argument("N exceeds the exhaustive-enumeration limit of 24");
  }
}

void require_length(const CouplingLayout& layout, std::span<const double> x) {
  if (x.size() != layout.coordinates()) {
    throw std::invalid_argument("coupling vector length mismatch");
  }
}

// Dense symmetric coupling matrix with zero diagonal.
std::vector<double> coupling_matrix(const CouplingLayout& layout,
                                    std::span<const double> x) {
  const std::size_t N = layout.spins();
  std::vector<double> J(N * N, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto [i, j] = layout.pair(k);
    J[i * N + j] = x[k];
    J[j * N + i] = x[k];
  }
  return J;
}

// Incremental state for single-spin-flip enumeration.
class SpinWalker {
 public:
  SpinWalker(const CouplingLayout& layout, std::span<const double> x)
      : N_(layout.spins()), J_(coupling_matrix(layout, x)), sigma_(N_, -1),
        field_(N_, 0.0) {
    // All spins -1: local field L_k = -sum_j J_kj, energy = sum_{i<j} J_ij.
    for (std::size_t k = 0; k < N_; ++k) {
      for (std::size_t j = 0; j < N_; ++j) field_[k] -= J_[k * N_ + j];
    }
    for (double v : x) energy_ += v;
    magnetization_ = -static_cast<double>(N_);
  }

  void flip(std::size_t k) {
    const double s = sigma_[k];
    energy_ -= 2.0 * s * field_[k];
    magnetization_ -= 2.0 * s;
    for (std::size_t j = 0; j < N_; ++j) field_[j] -= 2.0 * s * J_[j * N_ + k];
    sigma_[k] = static_cast<std::int8_t>(-sigma_[k]);
  }

  double energy() const { return energy_; }
  double magnetization() const { return magnetization_; }
  const Spins& sigma() const { return sigma_; }

 private:
  std::size_t N_;
  std::vector<double> J_;
  Spins sigma_;
  std::vector<double> field_;
  double energy_ = 0.0;
  double magnetization_ = 0.0;
};

}  // namespace

CouplingLayout::CouplingLayout(std::size_t N) : N_(N) {
  if (N == 0) throw std::invalid_argument("CouplingLayout: N must be positive");
  pairs_.reserve(N * (N - 1) / 2);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) pairs_.emplace_back(i, j);
  }
}

std::size_t CouplingLayout::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= N_) {
    throw std::out_of_range("CouplingLayout: invalid pair");
  }
  // Row i starts after sum_{r<i} (N - 1 - r) entries.
  return i * (2 * N_ - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> CouplingLayout::pair(std::size_t k) const {
  if (k >= pairs_.size()) {
    throw std::out_of_range("CouplingLayout: coordinate out of range");
  }
  return pairs_[k];
}

SKParams SKParams::make(double beta, double h) {
  if (!(beta > 0.0) || !std::isfinite(beta) || !std::isfinite(h)) {
    throw std::invalid_argument("SKParams: beta must be positive and finite");
  }
  return {beta, h};
}

GroundStateBoundParams GroundStateBoundParams::make(double A, double epsilon) {
  if (!(A >= 1.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("ground-state bound needs A >= 1, epsilon > 0");
  }
  return {A, epsilon};
}

double pair_energy(const CouplingLayout& layout,
                   std::span<const std::int8_t> sigma,
                   std::span<const double> x) {
  require_length(layout, x);
  if (sigma.size() != layout.spins()) {
    throw std::invalid_argument("spin vector length mismatch");
  }
  double energy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto [i, j] = layout.pair(k);
    energy += x[k] * sigma[i] * sigma[j];
  }
  return energy;
}

double family_member(const CouplingLayout& layout, const SKParams& params,
                     std::span<const std::int8_t> sigma,
                     std::span<const double> x) {
  const double N = static_cast<double>(layout.spins());
  double magnetization = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) magnetization += sigma[k];
  return params.beta * std::pow(N, -1.5) * pair_energy(layout, sigma, x) +
         params.beta * params.h * magnetization / N;
}

SKFamily::SKFamily(std::size_t N, SKParams params)
    : layout_(N), params_(SKParams::make(params.beta, params.h)) {
  if (N > 30) throw std::invalid_argument("SKFamily: N too large to enumerate");
}

double SKFamily::log_size() const {
  return static_cast<double>(layout_.spins()) * std::numbers::ln2;
}

std::array<double, 3> SKFamily::derivative_sups() const {
  const double N = static_cast<double>(layout_.spins());
  return {params_.beta * std::pow(N, -1.5), 0.0, 0.0};
}

void SKFamily::for_each_value(std::span<const double> x,
                              const std::function<void(double)>& visit) const {
  require_length(layout_, x);
  const std::size_t N = layout_.spins();
  Spins sigma(N);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    for (std::size_t b = 0; b < N; ++b) sigma[b] = ((mask >> b) & 1U) ? 1 : -1;
    visit(family_member(layout_, params_, sigma, x));
  }
}

void SKFamily::for_each_partials(
    std::span<const double> x, std::size_t i,
    const std::function<void(const MemberPartials&)>& visit) const {
  require_length(layout_, x);
  const auto [a, b] = layout_.pair(i);
  const std::size_t N = layout_.spins();
  const double scale = params_.beta * std::pow(static_cast<double>(N), -1.5);
  Spins sigma(N);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    for (std::size_t s = 0; s < N; ++s) sigma[s] = ((mask >> s) & 1U) ? 1 : -1;
    visit({family_member(layout_, params_, sigma, x),
           scale * sigma[a] * sigma[b], 0.0, 0.0});
  }
}

FamilyLambda family_lambda(const SKParams& params, std::size_t N) {
  if (N < 2) throw std::invalid_argument("family_lambda: N must be >= 2");
  const double Nd = static_cast<double>(N);
  const double b = params.beta;
  return {b * b * std::pow(Nd, -3.0), b * b * b * std::pow(Nd, -4.5),
          Nd * std::numbers::ln2};
}

double free_energy(const CouplingLayout& layout, const SKParams& params,
                   std::span<const double> x) {
  const std::size_t N = layout.spins();
  require_enumerable(N);
  require_length(layout, x);
  const double Nd = static_cast<double>(N);
  const double coupling = params.beta / std::sqrt(Nd);
  const double field = params.beta * params.h;

  SpinWalker walker(layout, x);
  auto exponent = [&] {
    return coupling * walker.energy() + field * walker.magnetization();
  };
  // Running log-sum-exp: sum = sum_sigma exp(w_sigma - top).
  double top = exponent();
  double sum = 1.0;
  const std::uint64_t count = std::uint64_t{1} << N;
  for (std::uint64_t t = 1; t < count; ++t) {
    walker.flip(static_cast<std::size_t>(std::countr_zero(t)));
    const double w = exponent();
    if (w > top) {
      sum = sum * std::exp(top - w) + 1.0;
      top = w;
    } else {
      sum += std::exp(w - top);
    }
  }
  return (top + std::log(sum)) / Nd;
}

SoftMaxLambdaBounds free_energy_lambda(const SKParams& params, std::size_t N) {
  const auto lam = family_lambda(params, N);
  return theorem2_lambda_bounds(lam.lambda2, lam.lambda3, static_cast<double>(N));
}

GroundState ground_state(const CouplingLayout& layout,
                         std::span<const double> x) {
  const std::size_t N = layout.spins();
  require_enumerable(N);
  require_length(layout, x);
  double scale = 0.0;
  for (double v : x) scale += std::abs(v);
  // Incremental energies of tied configurations can differ by rounding.
  const double tie_window = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  // sigma_0 = -1 fixed; the other N-1 spins run through a Gray code.
  SpinWalker walker(layout, x);
  double best = walker.energy();
  Spins best_sigma = walker.sigma();
  const std::uint64_t count = std::uint64_t{1} << (N - 1);
  for (std::uint64_t t = 1; t < count; ++t) {
    walker.flip(1 + static_cast<std::size_t>(std::countr_zero(t)));
    const double e = walker.energy();
    if (e > best + tie_window) {
      best = e;
      best_sigma = walker.sigma();
    } else if (e >= best - tie_window &&
               std::lexicographical_compare(walker.sigma().begin(),
                                            walker.sigma().end(),
                                            best_sigma.begin(),
                                            best_sigma.end())) {
      best = std::max(best, e);
      best_sigma = walker.sigma();
    }
  }
  return {pair_energy(layout, best_sigma, x), best_sigma};
}

GroundStateBound ground_state_bound(const TestFunction& g, std::size_t N,
                                    const GroundStateBoundParams& params,
                                    const TruncatedSums& sums) {
  const auto p = GroundStateBoundParams::make(params.A, params.epsilon);
  const auto lam = family_lambda(SKParams{1.0, 0.0}, N);
  const double Nd = static_cast<double>(N);
  const double alpha = p.A * Nd;

  GroundStateBound out{};
  out.value = theorem3_bound(g, alpha, lam.lambda2, lam.lambda3, lam.log_size,
                             sums.T1K, sums.T2K);
  out.inverse_A = 1.0 / p.A;
  out.tail_term = p.A * sums.T1K / (Nd * Nd);
  out.smoothing_term = p.A * p.A * p.epsilon;
  const auto C = c_constants(g);
  out.constant = std::max({2.0 * g.norm1 * std::numbers::ln2, 3.0 * C.C1,
                           13.0 * C.C2});
  return out;
}

GroundStateBound ground_state_bound(const TestFunction& g, std::size_t N,
                                    const GroundStateBoundParams& params,
                                    const DistributionSpec& spec_x,
                                    const DistributionSpec& spec_y) {
  const auto p = GroundStateBoundParams::make(params.A, params.epsilon);
  const double K = p.epsilon * std::sqrt(static_cast<double>(N));
  return ground_state_bound(g, N, p,
                            truncated_sums(spec_x, spec_y, N * (N - 1) / 2, K));
}

SKExperimentResult sk_experiment(SKKind kind, const DistributionSpec& spec_x,
                                 const DistributionSpec& spec_y,
                                 const SKParams& params, std::size_t N,
                                 const TestFunction& g, const McOptions& options,
                                 const GroundStateBoundParams& fallback) {
  require_enumerable(N);
  const auto sk = SKParams::make(params.beta, params.h);
  const CouplingLayout layout(N);
  const std::size_t n = layout.coordinates();
  const std::vector<DistributionSpec> xs(n, spec_x), ys(n, spec_y);
  const ExtendedReal gamma = max_gamma(spec_x, spec_y);
  const double Nd = static_cast<double>(N);
  const auto C = c_constants(g);

  SKExperimentResult result;
  Statistic statistic;
  double bound = 0.0;
  if (kind == SKKind::FreeEnergy) {
    statistic = [&](std::span<const double> x, std::span<double> out) {
      out[0] = free_energy(layout, sk, x);
    };
    const auto lam = free_energy_lambda(sk, N);
    if (gamma.is_finite()) {
      bound = corollary1_bound(C.C2, gamma, n, lam.lambda3);
      result.bound_route = "corollary1";
    } else {
      const auto p = GroundStateBoundParams::make(fallback.A, fallback.epsilon);
      const auto sums = truncated_sums(spec_x, spec_y, n, p.epsilon * std::sqrt(Nd));
      bound = theorem1_bound(C.C1, C.C2, lam.lambda2, lam.lambda3, sums.T1K,
                             sums.T2K);
      result.bound_route = "theorem1";
    }
  } else {
    if (sk.h != 0.0) {
      throw std::invalid_argument("ground-state experiment requires h = 0");
    }
    const double scale = sk.beta * std::pow(Nd, -1.5);
    statistic = [&layout, scale](std::span<const double> x, std::span<double> out) {
      out[0] = scale * ground_state(layout, x).value;
    };
    const auto lam = family_lambda(sk, N);
    if (gamma.is_finite()) {
      bound = corollary2_bound(g, gamma, n, lam.lambda3, lam.log_size).bound;
      result.bound_route = "corollary2";
    } else {
      const auto p = GroundStateBoundParams::make(fallback.A, fallback.epsilon);
      const auto sums = truncated_sums(spec_x, spec_y, n, p.epsilon * std::sqrt(Nd));
      bound = theorem3_bound(g, p.A * Nd, lam.lambda2, lam.lambda3, lam.log_size,
                             sums.T1K, sums.T2K);
      result.bound_route = "ground_state";
    }
  }
  const auto channels = paired_monte_carlo(n, 1, statistic, g, xs, ys, options);
  result.report = make_report(channels[0], n, bound, options);
  return result;
}

}  // namespace lindeberg
