#pragma once

#include <functional>

namespace lindeberg {

struct QuadratureResult {
  double value;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Either limit
/// may be infinite. Throws std::runtime_error if the requested relative
/// tolerance is not met.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol = 1e-10);

}  // namespace lindeberg
