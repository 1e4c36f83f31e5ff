#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace lindeberg {

/// Open interval (lower, upper) containing 0.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  static Interval real_line() { return {}; }
  bool contains(double x) const { return lower < x && x < upper; }
};

/// A map I^n -> R that is thrice differentiable in each coordinate.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual std::size_t dimension() const = 0;
  virtual Interval domain() const { return Interval::real_line(); }
  virtual double value(std::span<const double> x) const = 0;
  /// order-th partial derivative in coordinate i, order in {1, 2, 3}.
  virtual double partial(std::span<const double> x, std::size_t i,
                         int order) const = 0;
  virtual std::string name() const = 0;
};

/// f(x) = n^{-1/2} sum_i x_i.
class MeanFunction final : public SmoothFunction {
 public:
  explicit MeanFunction(std::size_t n);
  std::size_t dimension() const override { return n_; }
  double value(std::span<const double> x) const override;
  double partial(std::span<const double> x, std::size_t i,
                 int order) const override;
  std::string name() const override { return "mean"; }

 private:
  std::size_t n_;
  double scale_;
};

class ConstantFunction final : public SmoothFunction {
 public:
  ConstantFunction(std::size_t n, double c) : n_(n), c_(c) {}
  std::size_t dimension() const override { return n_; }
  double value(std::span<const double>) const override { return c_; }
  double partial(std::span<const double>, std::size_t, int) const override {
    return 0.0;
  }
  std::string name() const override { return "constant"; }

 private:
  std::size_t n_;
  double c_;
};

/// f(x) = x_k^power on (lower, upper)^n.
class CoordinatePower final : public SmoothFunction {
 public:
  CoordinatePower(std::size_t n, std::size_t coordinate, int power,
                  Interval domain = Interval::real_line());
  std::size_t dimension() const override { return n_; }
  Interval domain() const override { return domain_; }
  double value(std::span<const double> x) const override;
  double partial(std::span<const double> x, std::size_t i,
                 int order) const override;
  std::string name() const override { return "coordinate_power"; }

 private:
  std::size_t n_;
  std::size_t coordinate_;
  int power_;
  Interval domain_;
};

/// c * f.
class ScaledFunction final : public SmoothFunction {
 public:
  ScaledFunction(std::shared_ptr<const SmoothFunction> f, double c)
      : f_(std::move(f)), c_(c) {}
  std::size_t dimension() const override { return f_->dimension(); }
  Interval domain() const override { return f_->domain(); }
  double value(std::span<const double> x) const override {
    return c_ * f_->value(x);
  }
  double partial(std::span<const double> x, std::size_t i,
                 int order) const override {
    return c_ * f_->partial(x, i, order);
  }
  std::string name() const override { return "scaled_" + f_->name(); }

 private:
  std::shared_ptr<const SmoothFunction> f_;
  double c_;
};

/// A scalar g with certified sup-norms of its first three derivatives.
struct TestFunction {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
  double norm1 = 0.0;
  double norm2 = 0.0;
  double norm3 = 0.0;

  static TestFunction sine();
  static TestFunction hyperbolic_tangent();
  static TestFunction identity();
  /// x^2 on [-knee, knee], continued as knee^2 + 2(knee t + log cosh t)
  /// with t = |x| - knee, so that g' stays bounded and g''' is finite.
  static TestFunction clipped_square(double knee = 10.0);

  /// "sin", "tanh", "identity", "clipped_square".
  static TestFunction by_name(std::string_view name);
};

using ValueFunction = std::function<double(std::span<const double>)>;

/// Default central-difference step for the given order, scaled by
/// max(1, |x_i|).
double default_fd_step(int order, double xi);

/// Central finite-difference estimate of the order-th partial in coordinate
/// i: 5-point stencil for orders 1-2, 7-point for order 3. step <= 0 selects
/// default_fd_step. Throws std::domain_error if the stencil leaves domain.
double fd_partial(const ValueFunction& f, std::span<const double> x,
                  std::size_t i, int order,
                  Interval domain = Interval::real_line(), double step = 0.0);

/// Overload that evaluates f.value and respects f.domain().
double fd_partial(const SmoothFunction& f, std::span<const double> x,
                  std::size_t i, int order, double step = 0.0);

}  // namespace lindeberg
