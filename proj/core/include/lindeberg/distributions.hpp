#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lindeberg/random.hpp"

namespace lindeberg {

/// A nonnegative real that may be +infinity, carried as an explicit tag so
/// callers cannot silently feed an infinite third moment into arithmetic.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v);
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }

  bool is_finite() const { return !infinite_; }
  /// Throws std::domain_error when infinite.
  double value() const;

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  ExtendedReal(bool infinite, double v) : infinite_(infinite), value_(v) {}
  bool infinite_;
  double value_;
};

ExtendedReal maximum(const ExtendedReal& a, const ExtendedReal& b);

enum class Family {
  Gaussian,
  Rademacher,
  UniformScaled,
  CenteredExponentialScaled,
  TruncatedPareto,
};

/// A mean-zero, unit-variance input law. Every constructor standardizes, so
/// no unstandardized spec is representable.
class DistributionSpec {
 public:
  static DistributionSpec gaussian();
  static DistributionSpec rademacher();
  /// Uniform on [-sqrt(3), sqrt(3)].
  static DistributionSpec uniform();
  /// Exp(1) - 1.
  static DistributionSpec centered_exponential();
  /// Symmetric Pareto: |X| = c * U^{-1/a} with c chosen for unit variance.
  /// Requires tail_index > 2.
  static DistributionSpec pareto(double tail_index);

  /// Parses "rademacher", "gaussian", "uniform", "cexp", "pareto:<a>".
  /// Throws std::invalid_argument on anything else.
  static DistributionSpec parse(std::string_view text);

  Family family() const { return family_; }
  std::span<const double> params() const { return params_; }
  double mean() const { return 0.0; }
  double variance() const { return 1.0; }
  /// E|X|^3.
  ExtendedReal gamma() const;
  /// Config string that parses back to this spec.
  std::string name() const;

  double sample(RandomStream& stream) const;
  /// Fills out with i.i.d. draws; reuses distribution state across draws.
  void fill(RandomStream& stream, std::span<double> out) const;

  friend bool operator==(const DistributionSpec&,
                         const DistributionSpec&) = default;

 private:
  DistributionSpec(Family family, std::vector<double> params)
      : family_(family), params_(std::move(params)) {}
  Family family_;
  std::vector<double> params_;
};

/// E(X^2; |X| > K) and E(|X|^3; |X| <= K) at one truncation level.
struct MomentProfile {
  double K;
  double tail_second;
  double body_third;
};

/// E(X^2; |X| > K). K may be +infinity. Throws std::invalid_argument if K <= 0.
double truncated_second_moment(const DistributionSpec& spec, double K);
/// E(|X|^3; |X| <= K). K may be +infinity. Throws std::invalid_argument if K <= 0.
double truncated_third_moment(const DistributionSpec& spec, double K);
ExtendedReal third_abs_moment(const DistributionSpec& spec);
MomentProfile moment_profile(const DistributionSpec& spec, double K);

/// Sums over coordinates of both laws:
/// T1(K) = sum_i [E(X_i^2;|X_i|>K) + E(Y_i^2;|Y_i|>K)],
/// T2(K) = sum_i [E(|X_i|^3;|X_i|<=K) + E(|Y_i|^3;|Y_i|<=K)].
struct TruncatedSums {
  double T1K;
  double T2K;
};
TruncatedSums truncated_sums(std::span<const DistributionSpec> specs_x,
                             std::span<const DistributionSpec> specs_y,
                             double K);
/// i.i.d. shorthand: n copies of each law.
TruncatedSums truncated_sums(const DistributionSpec& spec_x,
                             const DistributionSpec& spec_y, std::size_t n,
                             double K);

/// gamma = max over all coordinates of E|X_i|^3 and E|Y_i|^3.
ExtendedReal max_gamma(const DistributionSpec& spec_x,
                       const DistributionSpec& spec_y);

}  // namespace lindeberg
