#include "lindeberg/lindeberg.hpp"

#include <cmath>
#include <stdexcept>

namespace lindeberg {

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    compensation_ += (sum_ - t) + v;
  } else {
    compensation_ += (v - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

GConstants c_constants(const TestFunction& g) {
  if (!std::isfinite(g.norm1) || !std::isfinite(g.norm2) ||
      !std::isfinite(g.norm3)) {
    throw std::domain_error("c_constants: test function norms must be finite");
  }
  return {g.norm1 + g.norm2, g.norm1 / 6.0 + g.norm2 / 2.0 + g.norm3 / 6.0};
}

double theorem1_bound(double C1, double C2, double lambda2, double lambda3,
                      double T1K, double T2K) {
  for (double v : {C1, C2, lambda2, lambda3, T1K, T2K}) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("theorem1_bound: inputs must be nonnegative");
    }
  }
  // A zero factor annihilates its channel even when the other factor is
  // infinite (e.g. T2(K) at K = inf for a heavy tail with lambda3 = 0).
  const double first = (C1 == 0.0 || lambda2 == 0.0) ? 0.0 : C1 * lambda2 * T1K;
  const double second =
      (C2 == 0.0 || lambda3 == 0.0) ? 0.0 : C2 * lambda3 * T2K;
  return first + second;
}

double corollary1_bound(double C2, const ExtendedReal& gamma, std::size_t n,
                        double lambda3) {
  if (!gamma.is_finite()) {
    throw std::domain_error(
        "corollary1_bound: gamma is infinite; use theorem1_bound with a "
        "finite truncation level K");
  }
  if (C2 < 0.0 || lambda3 < 0.0) {
    throw std::invalid_argument("corollary1_bound: negative input");
  }
  return 2.0 * C2 * gamma.value() * static_cast<double>(n) * lambda3;
}

double LambdaEstimate::lambda(int r) const {
  switch (r) {
    case 1: return lambda1;
    case 2: return lambda2;
    case 3: return lambda3;
    default: throw std::invalid_argument("lambda order must be 1, 2 or 3");
  }
}

LambdaEstimate lambda_from_order_sups(const std::array<double, 3>& sups,
                                      LambdaKind kind) {
  LambdaEstimate out;
  out.kind = kind;
  out.order_sup = sups;
  double* lambdas[] = {&out.lambda1, &out.lambda2, &out.lambda3};
  for (int r = 1; r <= 3; ++r) {
    double best = 0.0;
    for (int p = 1; p <= r; ++p) {
      best = std::max(best, std::pow(sups[p - 1], static_cast<double>(r) / p));
    }
    *lambdas[r - 1] = best;
  }
  return out;
}

LambdaEstimate estimate_lambda(const SmoothFunction& f,
                               std::span<const std::vector<double>> points) {
  if (points.empty()) {
    throw std::invalid_argument("estimate_lambda: empty point set");
  }
  const std::size_t n = f.dimension();
  const Interval domain = f.domain();
  std::array<double, 3> sups{0.0, 0.0, 0.0};
  for (const auto& x : points) {
    if (x.size() != n) {
      throw std::invalid_argument("estimate_lambda: point dimension mismatch");
    }
    for (double xi : x) {
      if (!domain.contains(xi)) {
        throw std::invalid_argument("estimate_lambda: point outside domain");
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int p = 1; p <= 3; ++p) {
        sups[p - 1] = std::max(sups[p - 1], std::abs(f.partial(x, i, p)));
      }
    }
  }
  return lambda_from_order_sups(sups, LambdaKind::EmpiricalSup);
}

std::vector<double> telescoping_decomposition(const SmoothFunction& f,
                                              const TestFunction& g,
                                              std::span<const double> x_draw,
                                              std::span<const double> y_draw) {
  const std::size_t n = f.dimension();
  if (x_draw.size() != n || y_draw.size() != n) {
    throw std::invalid_argument("telescoping_decomposition: dimension mismatch");
  }
  std::vector<double> z(y_draw.begin(), y_draw.end());
  std::vector<double> increments(n);
  double previous = g.value(f.value(z));
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = x_draw[i];
    const double current = g.value(f.value(z));
    increments[i] = current - previous;
    previous = current;
  }
  return increments;
}

}  // namespace lindeberg
