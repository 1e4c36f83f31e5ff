#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"

namespace lindeberg {

/// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

struct GConstants {
  double C1;  // ||g'|| + ||g''||
  double C2;  // ||g'||/6 + ||g''||/2 + ||g'''||/6
};

/// Throws std::domain_error if any certified norm is not finite.
GConstants c_constants(const TestFunction& g);

/// C1 lambda2 T1(K) + C2 lambda3 T2(K). Throws std::invalid_argument on a
/// negative input.
double theorem1_bound(double C1, double C2, double lambda2, double lambda3,
                      double T1K, double T2K);

/// 2 C2 gamma n lambda3, the K -> infinity form of theorem1_bound. Throws
/// std::domain_error when gamma is infinite: use theorem1_bound with a
/// finite truncation level instead.
double corollary1_bound(double C2, const ExtendedReal& gamma, std::size_t n,
                        double lambda3);

enum class LambdaKind { AnalyticBound, EmpiricalSup };

struct LambdaEstimate {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  LambdaKind kind = LambdaKind::EmpiricalSup;
  /// sup over coordinates and points of |d^p f / dx_i^p|, p = 1, 2, 3.
  std::array<double, 3> order_sup{0.0, 0.0, 0.0};

  double lambda(int r) const;
};

/// lambda_r = max_{p <= r} order_sup[p]^{r/p}.
LambdaEstimate lambda_from_order_sups(const std::array<double, 3>& sups,
                                      LambdaKind kind);

/// Empirical lambda_1..3 of f over the given points. Throws
/// std::invalid_argument on an empty point set or a point outside I^n.
LambdaEstimate estimate_lambda(const SmoothFunction& f,
                               std::span<const std::vector<double>> points);

/// Per-coordinate swap increments h(Z_i) - h(Z_{i-1}), i = 1..n, where
/// h = g o f and Z_i = (x_1..x_i, y_{i+1}..y_n).
std::vector<double> telescoping_decomposition(const SmoothFunction& f,
                                              const TestFunction& g,
                                              std::span<const double> x_draw,
                                              std::span<const double> y_draw);

}  // namespace lindeberg
