#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"
#include "lindeberg/monte_carlo.hpp"
#include "lindeberg/smoothmax.hpp"

namespace lindeberg {

/// Members f_i(x) = n^{-1/2} sum_{j<=i} x_j, i = 1..n.
class WalkFamily final : public FunctionFamily {
 public:
  explicit WalkFamily(std::size_t n);

  std::size_t dimension() const override { return n_; }
  double log_size() const override;
  std::array<double, 3> derivative_sups() const override;
  void for_each_value(std::span<const double> x,
                      const std::function<void(double)>& visit) const override;
  void for_each_partials(
      std::span<const double> x, std::size_t i,
      const std::function<void(const MemberPartials&)>& visit) const override;

  /// f_i as a standalone SmoothFunction (i is 1-based).
  std::shared_ptr<const SmoothFunction> member(std::size_t i) const;

 private:
  std::size_t n_;
};

/// max_{1<=j<=n} n^{-1/2} sum_{i<=j} x_i in one pass. Throws on empty input.
double max_partial_sums(std::span<const double> x);

/// K(g)[gamma^{1/3} n^{-1/6} (log n)^{2/3} + gamma n^{-1/2}], computed via
/// corollary2_bound on WalkFamily(n). Throws std::domain_error for infinite
/// gamma, std::invalid_argument for n < 2.
double erdos_kac_bound(const TestFunction& g, const ExtendedReal& gamma,
                       std::size_t n);

/// CDF of |Z|: 2 Phi(t) - 1 for t >= 0, else 0.
double half_normal_reference(double t);

/// sup_t |F_n(t) - cdf(t)| of the empirical CDF of samples.
double ks_distance(std::vector<double> samples, double (*cdf)(double));

struct ErdosKacResult {
  GapReport report;
  double ks_distance = 0.0;  // of the Y-side maxima against |Z|
};

/// Paired Monte Carlo on max_partial_sums with the erdos_kac_bound; also the
/// KS distance of the Y-side maxima to the half-normal law.
ErdosKacResult erdos_kac_experiment(const DistributionSpec& spec_x,
                                    const DistributionSpec& spec_y,
                                    std::size_t n, const TestFunction& g,
                                    const McOptions& options);

/// KS distance to the half-normal law of R maxima of n-step walks with the
/// given step law.
double ks_to_half_normal(const DistributionSpec& spec, std::size_t n,
                         const McOptions& options);

}  // namespace lindeberg
