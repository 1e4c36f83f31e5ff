#include "lindeberg/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lindeberg {

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol) {
  if (a == b) return {0.0, 0.0};
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
          f, a, b, /*max_depth=*/30, rel_tol, &error, &l1);
  if (!std::isfinite(value)) {
    throw std::runtime_error("integrate: non-finite result");
  }
  // Boost reports the error relative to the L1 norm; accept anything at or
  // below the target or within a few ulps of an exact zero.
  if (error > rel_tol * std::max(std::abs(value), l1) && error > 1e-300) {
    throw std::runtime_error("integrate: tolerance not reached");
  }
  return {value, error};
}

}  // namespace lindeberg
