#include "lindeberg/functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lindeberg {

namespace {

void check_order(int order) {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("derivative order must be 1, 2 or 3");
  }
}

void check_coordinate(std::size_t i, std::size_t n) {
  if (i >= n) throw std::out_of_range("coordinate index out of range");
}

double sech2(double t) {
  const double c = std::cosh(t);
  return 1.0 / (c * c);
}

}  // namespace

MeanFunction::MeanFunction(std::size_t n)
    : n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n))) {
  if (n == 0) throw std::invalid_argument("MeanFunction: n must be positive");
}

double MeanFunction::value(std::span<const double> x) const {
  double sum = 0.0;
  for (double v : x) sum += v;
  return scale_ * sum;
}

double MeanFunction::partial(std::span<const double>, std::size_t i,
                             int order) const {
  check_order(order);
  check_coordinate(i, n_);
  return order == 1 ? scale_ : 0.0;
}

CoordinatePower::CoordinatePower(std::size_t n, std::size_t coordinate,
                                 int power, Interval domain)
    : n_(n), coordinate_(coordinate), power_(power), domain_(domain) {
  check_coordinate(coordinate, n);
  if (power < 0) throw std::invalid_argument("CoordinatePower: power < 0");
}

double CoordinatePower::value(std::span<const double> x) const {
  return std::pow(x[coordinate_], power_);
}

double CoordinatePower::partial(std::span<const double> x, std::size_t i,
                                int order) const {
  check_order(order);
  check_coordinate(i, n_);
  if (i != coordinate_ || order > power_) return 0.0;
  double falling = 1.0;
  for (int k = 0; k < order; ++k) falling *= power_ - k;
  return falling * std::pow(x[coordinate_], power_ - order);
}

TestFunction TestFunction::sine() {
  return {"sin",
          [](double x) { return std::sin(x); },
          [](double x) { return std::cos(x); },
          [](double x) { return -std::sin(x); },
          [](double x) { return -std::cos(x); },
          1.0,
          1.0,
          1.0};
}

TestFunction TestFunction::hyperbolic_tangent() {
  // sup|tanh''| = 4/(3 sqrt 3) at tanh^2 = 1/3; sup|tanh'''| = 2 at 0.
  return {"tanh",
          [](double x) { return std::tanh(x); },
          [](double x) { return sech2(x); },
          [](double x) { return -2.0 * std::tanh(x) * sech2(x); },
          [](double x) {
            const double t = std::tanh(x);
            return -2.0 * (1.0 - 3.0 * t * t) * sech2(x);
          },
          1.0,
          4.0 / (3.0 * std::sqrt(3.0)),
          2.0};
}

TestFunction TestFunction::identity() {
  return {"identity",
          [](double x) { return x; },
          [](double) { return 1.0; },
          [](double) { return 0.0; },
          [](double) { return 0.0; },
          1.0,
          0.0,
          0.0};
}

TestFunction TestFunction::clipped_square(double knee) {
  if (!(knee > 0.0)) throw std::invalid_argument("clipped_square: knee <= 0");
  auto value = [knee](double x) {
    const double a = std::abs(x);
    if (a <= knee) return x * x;
    const double t = a - knee;
    // log cosh t = t + log1p(e^{-2t}) - log 2, stable for large t.
    const double log_cosh = t + std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
    return knee * knee + 2.0 * (knee * t + log_cosh);
  };
  auto d1 = [knee](double x) {
    const double a = std::abs(x);
    const double s = x < 0.0 ? -1.0 : 1.0;
    if (a <= knee) return 2.0 * x;
    return s * 2.0 * (knee + std::tanh(a - knee));
  };
  auto d2 = [knee](double x) {
    const double a = std::abs(x);
    if (a <= knee) return 2.0;
    return 2.0 * sech2(a - knee);
  };
  auto d3 = [knee](double x) {
    const double a = std::abs(x);
    const double s = x < 0.0 ? -1.0 : 1.0;
    if (a <= knee) return 0.0;
    const double t = a - knee;
    return -s * 4.0 * sech2(t) * std::tanh(t);
  };
  return {"clipped_square", value, d1, d2, d3,
          2.0 * (knee + 1.0), 2.0, 8.0 / (3.0 * std::sqrt(3.0))};
}

TestFunction TestFunction::by_name(std::string_view name) {
  if (name == "sin") return sine();
  if (name == "tanh") return hyperbolic_tangent();
  if (name == "identity") return identity();
  if (name == "clipped_square") return clipped_square();
  throw std::invalid_argument("unknown test function: " + std::string(name));
}

double default_fd_step(int order, double xi) {
  check_order(order);
  // Balances O(h^4) truncation against O(eps / h^order) cancellation.
  static constexpr double kBase[] = {1e-4, 1e-3, 1e-2};
  return kBase[order - 1] * std::max(1.0, std::abs(xi));
}

double fd_partial(const ValueFunction& f, std::span<const double> x,
                  std::size_t i, int order, Interval domain, double step) {
  check_order(order);
  check_coordinate(i, x.size());
  const double h = step > 0.0 ? step : default_fd_step(order, x[i]);
  const int reach = order == 3 ? 3 : 2;
  if (!domain.contains(x[i] - reach * h) || !domain.contains(x[i] + reach * h)) {
    throw std::domain_error("fd_partial: stencil escapes the domain");
  }
  std::vector<double> point(x.begin(), x.end());
  auto at = [&](int k) {
    point[i] = x[i] + k * h;
    return f(point);
  };
  switch (order) {
    case 1:
      return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
    case 2:
      return (-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) /
             (12.0 * h * h);
    default:
      return (-at(3) + 8.0 * at(2) - 13.0 * at(1) + 13.0 * at(-1) -
              8.0 * at(-2) + at(-3)) /
             (8.0 * h * h * h);
  }
}

double fd_partial(const SmoothFunction& f, std::span<const double> x,
                  std::size_t i, int order, double step) {
  return fd_partial([&f](std::span<const double> p) { return f.value(p); }, x,
                    i, order, f.domain(), step);
}

}  // namespace lindeberg
