#include "lindeberg/distributions.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lindeberg/quadrature.hpp"

namespace lindeberg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

void require_positive_level(double K) {
  if (!(K > 0.0)) {
    throw std::invalid_argument("truncation level K must be positive");
  }
}

// 1 - (1 + u) e^{-u}, accurate for small u.
double gamma_two_lower(double u) {
  if (u < 0.5) {
    // sum_{k>=2} (-1)^k (k-1) u^k / k!
    double term = u;  // u^k / k! at k = 1
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      term *= u / k;
      const double add = ((k % 2 == 0) ? 1.0 : -1.0) * (k - 1) * term;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 1.0 - (1.0 + u) * std::exp(-u);
}

double gaussian_tail_second(double K) {
  if (std::isinf(K)) return 0.0;
  const double phi = std::exp(-0.5 * K * K) / std::sqrt(2.0 * std::numbers::pi);
  const double upper = 0.5 * std::erfc(K / std::numbers::sqrt2);
  return 2.0 * (K * phi + upper);
}

double gaussian_body_third(double K) {
  if (std::isinf(K)) return 2.0 * kSqrt2OverPi;
  return 2.0 * kSqrt2OverPi * gamma_two_lower(0.5 * K * K);
}

double uniform_tail_second(double K) {
  const double a = kSqrt3;
  if (K >= a) return 0.0;
  return (a - K) * (a * a + a * K + K * K) / (3.0 * a);
}

double uniform_body_third(double K) {
  const double b = std::min(K, kSqrt3);
  return b * b * b * b / (4.0 * kSqrt3);
}

// X = E - 1 with E ~ Exp(1); density e^{-(x+1)} on [-1, inf).
double cexp_tail_second(double K) {
  if (std::isinf(K)) return 0.0;
  // Upper tail, shifted so the e^{-K-1} factor is exact.
  const double upper =
      std::exp(-K - 1.0) *
      integrate([K](double t) { return (K + t) * (K + t) * std::exp(-t); },
                0.0, kInf)
          .value;
  double lower = 0.0;
  if (K < 1.0) {
    lower = integrate([](double x) { return x * x * std::exp(-x - 1.0); },
                      -1.0, -K)
                .value;
  }
  return upper + lower;
}

double cexp_body_third(double K) {
  const double left = std::min(K, 1.0);
  const double neg =
      integrate([](double x) { return -x * x * x * std::exp(-x - 1.0); },
                -left, 0.0)
          .value;
  const double pos =
      integrate([](double x) { return x * x * x * std::exp(-x - 1.0); }, 0.0,
                K)
          .value;
  return neg + pos;
}

double pareto_tail_second(double a, double c, double K) {
  if (std::isinf(K)) return 0.0;
  if (K <= c) return 1.0;
  return std::pow(c / K, a - 2.0);
}

double pareto_body_third(double a, double c, double K) {
  if (K <= c) return 0.0;
  const double c3 = c * c * c;
  if (std::isinf(K)) return a > 3.0 ? a * c3 / (a - 3.0) : kInf;
  if (a == 3.0) return a * c3 * std::log(K / c);
  return a * c3 * (std::pow(K / c, 3.0 - a) - 1.0) / (3.0 - a);
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) return infinity();
  return ExtendedReal(false, v);
}

double ExtendedReal::value() const {
  if (infinite_) throw std::domain_error("extended real is +infinity");
  return value_;
}

ExtendedReal maximum(const ExtendedReal& a, const ExtendedReal& b) {
  if (!a.is_finite() || !b.is_finite()) return ExtendedReal::infinity();
  return ExtendedReal::finite(std::max(a.value(), b.value()));
}

DistributionSpec DistributionSpec::gaussian() {
  return DistributionSpec(Family::Gaussian, {});
}

DistributionSpec DistributionSpec::rademacher() {
  return DistributionSpec(Family::Rademacher, {});
}

DistributionSpec DistributionSpec::uniform() {
  return DistributionSpec(Family::UniformScaled, {kSqrt3});
}

DistributionSpec DistributionSpec::centered_exponential() {
  return DistributionSpec(Family::CenteredExponentialScaled, {});
}

DistributionSpec DistributionSpec::pareto(double tail_index) {
  if (!(tail_index > 2.0) || !std::isfinite(tail_index)) {
    throw std::invalid_argument(
        "pareto tail index must exceed 2 for a finite variance");
  }
  const double scale = std::sqrt((tail_index - 2.0) / tail_index);
  return DistributionSpec(Family::TruncatedPareto, {tail_index, scale});
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  if (text == "gaussian") return gaussian();
  if (text == "rademacher") return rademacher();
  if (text == "uniform") return uniform();
  if (text == "cexp") return centered_exponential();
  constexpr std::string_view prefix = "pareto:";
  if (text.starts_with(prefix)) {
    const auto rest = text.substr(prefix.size());
    double a = 0.0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), a);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw std::invalid_argument("bad pareto tail index: " + std::string(text));
    }
    return pareto(a);
  }
  throw std::invalid_argument("unknown distribution: " + std::string(text));
}

std::string DistributionSpec::name() const {
  switch (family_) {
    case Family::Gaussian: return "gaussian";
    case Family::Rademacher: return "rademacher";
    case Family::UniformScaled: return "uniform";
    case Family::CenteredExponentialScaled: return "cexp";
    case Family::TruncatedPareto: return "pareto:" + format_number(params_[0]);
  }
  return "unknown";
}

ExtendedReal DistributionSpec::gamma() const { return third_abs_moment(*this); }

double DistributionSpec::sample(RandomStream& stream) const {
  double out = 0.0;
  fill(stream, std::span<double>(&out, 1));
  return out;
}

void DistributionSpec::fill(RandomStream& stream, std::span<double> out) const {
  switch (family_) {
    case Family::Gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& v : out) v = normal(stream);
      return;
    }
    case Family::Rademacher:
      for (double& v : out) v = (stream() >> 63) ? 1.0 : -1.0;
      return;
    case Family::UniformScaled:
      for (double& v : out) v = (2.0 * stream.uniform_open() - 1.0) * kSqrt3;
      return;
    case Family::CenteredExponentialScaled:
      for (double& v : out) v = -std::log(stream.uniform_open()) - 1.0;
      return;
    case Family::TruncatedPareto: {
      const double a = params_[0];
      const double c = params_[1];
      for (double& v : out) {
        const double magnitude = c * std::pow(stream.uniform_open(), -1.0 / a);
        v = (stream() >> 63) ? magnitude : -magnitude;
      }
      return;
    }
  }
}

double truncated_second_moment(const DistributionSpec& spec, double K) {
  require_positive_level(K);
  switch (spec.family()) {
    case Family::Gaussian: return gaussian_tail_second(K);
    case Family::Rademacher: return K < 1.0 ? 1.0 : 0.0;
    case Family::UniformScaled: return uniform_tail_second(K);
    case Family::CenteredExponentialScaled: return cexp_tail_second(K);
    case Family::TruncatedPareto:
      return pareto_tail_second(spec.params()[0], spec.params()[1], K);
  }
  return 0.0;
}

double truncated_third_moment(const DistributionSpec& spec, double K) {
  require_positive_level(K);
  switch (spec.family()) {
    case Family::Gaussian: return gaussian_body_third(K);
    case Family::Rademacher: return K >= 1.0 ? 1.0 : 0.0;
    case Family::UniformScaled: return uniform_body_third(K);
    case Family::CenteredExponentialScaled: return cexp_body_third(K);
    case Family::TruncatedPareto:
      return pareto_body_third(spec.params()[0], spec.params()[1], K);
  }
  return 0.0;
}

ExtendedReal third_abs_moment(const DistributionSpec& spec) {
  return ExtendedReal::finite(truncated_third_moment(spec, kInf));
}

MomentProfile moment_profile(const DistributionSpec& spec, double K) {
  return {K, truncated_second_moment(spec, K), truncated_third_moment(spec, K)};
}

TruncatedSums truncated_sums(std::span<const DistributionSpec> specs_x,
                             std::span<const DistributionSpec> specs_y,
                             double K) {
  if (specs_x.size() != specs_y.size()) {
    throw std::invalid_argument("truncated_sums: coordinate count mismatch");
  }
  TruncatedSums sums{0.0, 0.0};
  for (std::size_t i = 0; i < specs_x.size(); ++i) {
    sums.T1K += truncated_second_moment(specs_x[i], K) +
                truncated_second_moment(specs_y[i], K);
    sums.T2K += truncated_third_moment(specs_x[i], K) +
                truncated_third_moment(specs_y[i], K);
  }
  return sums;
}

TruncatedSums truncated_sums(const DistributionSpec& spec_x,
                             const DistributionSpec& spec_y, std::size_t n,
                             double K) {
  const auto nn = static_cast<double>(n);
  return {nn * (truncated_second_moment(spec_x, K) +
                truncated_second_moment(spec_y, K)),
          nn * (truncated_third_moment(spec_x, K) +
                truncated_third_moment(spec_y, K))};
}

ExtendedReal max_gamma(const DistributionSpec& spec_x,
                       const DistributionSpec& spec_y) {
  return maximum(spec_x.gamma(), spec_y.gamma());
}

}  // namespace lindeberg
