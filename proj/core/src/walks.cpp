#include "lindeberg/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lindeberg/random.hpp"

namespace lindeberg {

namespace {

class PrefixSum final : public SmoothFunction {
 public:
  PrefixSum(std::size_t n, std::size_t length)
      : n_(n), length_(length), scale_(1.0 / std::sqrt(static_cast<double>(n))) {}
  std::size_t dimension() const override { return n_; }
  double value(std::span<const double> x) const override {
    double s = 0.0;
    for (std::size_t j = 0; j < length_; ++j) s += x[j];
    return scale_ * s;
  }
  double partial(std::span<const double>, std::size_t i,
                 int order) const override {
    if (order < 1 || order > 3) throw std::invalid_argument("bad order");
    return (order == 1 && i < length_) ? scale_ : 0.0;
  }
  std::string name() const override { return "prefix_sum"; }

 private:
  std::size_t n_;
  std::size_t length_;
  double scale_;
};

}  // namespace

WalkFamily::WalkFamily(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("WalkFamily: n must be positive");
}

double WalkFamily::log_size() const {
  return std::log(static_cast<double>(n_));
}

std::array<double, 3> WalkFamily::derivative_sups() const {
  return {1.0 / std::sqrt(static_cast<double>(n_)), 0.0, 0.0};
}

void WalkFamily::for_each_value(std::span<const double> x,
                                const std::function<void(double)>& visit) const {
  if (x.size() != n_) throw std::invalid_argument("WalkFamily: length mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  double s = 0.0;
  for (double v : x) {
    s += v;
    visit(scale * s);
  }
}

void WalkFamily::for_each_partials(
    std::span<const double> x, std::size_t i,
    const std::function<void(const MemberPartials&)>& visit) const {
  if (x.size() != n_) throw std::invalid_argument("WalkFamily: length mismatch");
  if (i >= n_) throw std::out_of_range("WalkFamily: coordinate out of range");
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  double s = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    s += x[k];
    // Member k + 1 contains coordinate i iff i <= k.
    visit({scale * s, i <= k ? scale : 0.0, 0.0, 0.0});
  }
}

std::shared_ptr<const SmoothFunction> WalkFamily::member(std::size_t i) const {
  if (i == 0 || i > n_) throw std::out_of_range("WalkFamily: member index");
  return std::make_shared<PrefixSum>(n_, i);
}

double max_partial_sums(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("max_partial_sums: empty input");
  double s = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (double v : x) {
    s += v;
    best = std::max(best, s);
  }
  return best / std::sqrt(static_cast<double>(x.size()));
}

double erdos_kac_bound(const TestFunction& g, const ExtendedReal& gamma,
                       std::size_t n) {
  if (n < 2) throw std::invalid_argument("erdos_kac_bound: n must be >= 2");
  return corollary2_bound(g, gamma, n, WalkFamily(n)).bound;
}

double half_normal_reference(double t) {
  if (!(t > 0.0)) return 0.0;
  return std::erf(t / std::numbers::sqrt2);
}

double ks_distance(std::vector<double> samples, double (*cdf)(double)) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double m = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double F = cdf(samples[k]);
    d = std::max({d, static_cast<double>(k + 1) / m - F,
                  F - static_cast<double>(k) / m});
  }
  return d;
}

ErdosKacResult erdos_kac_experiment(const DistributionSpec& spec_x,
                                    const DistributionSpec& spec_y,
                                    std::size_t n, const TestFunction& g,
                                    const McOptions& options) {
  const std::vector<DistributionSpec> xs(n, spec_x), ys(n, spec_y);
  auto statistic = [](std::span<const double> x, std::span<double> out) {
    out[0] = max_partial_sums(x);
  };
  const auto channels = paired_monte_carlo(n, 1, statistic, g, xs, ys, options);
  const double bound = erdos_kac_bound(g, max_gamma(spec_x, spec_y), n);
  ErdosKacResult result;
  result.report = make_report(channels[0], n, bound, options);
  McOptions ks_options = options;
  ks_options.experiment_id += ":ks";
  result.ks_distance = ks_to_half_normal(spec_y, n, ks_options);
  return result;
}

double ks_to_half_normal(const DistributionSpec& spec, std::size_t n,
                         const McOptions& options) {
  if (n == 0) throw std::invalid_argument("ks_to_half_normal: n must be > 0");
  const std::uint64_t id = experiment_id(options.experiment_id.c_str());
  std::vector<double> maxima(options.replicates);
  parallel_for(options.replicates, options.threads, [&](std::size_t r) {
    std::vector<double> x(n);
    auto stream = RandomStream::derive(options.master_seed, id, r, 0);
    spec.fill(stream, x);
    maxima[r] = max_partial_sums(x);
  });
  return ks_distance(std::move(maxima), &half_normal_reference);
}

}  // namespace lindeberg
