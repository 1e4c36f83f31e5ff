#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"
#include "lindeberg/monte_carlo.hpp"

namespace lindeberg {

using Complex = std::complex<double>;

/// Flat coordinates x_k <-> upper-triangle entries (i, j), i <= j, row-major.
/// Indices are 0-based.
class WignerLayout {
 public:
  explicit WignerLayout(std::size_t N);

  std::size_t order() const { return N_; }
  std::size_t coordinates() const { return entries_.size(); }
  /// Accepts either (i, j) or (j, i).
  std::size_t index(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> entry(std::size_t k) const;

 private:
  std::size_t N_;
  std::vector<std::pair<std::size_t, std::size_t>> entries_;
};

/// Checked spectral parameter z = u + iv with v != 0.
class SpectralPoint {
 public:
  explicit SpectralPoint(Complex z);
  Complex z() const { return z_; }
  double v() const { return z_.imag(); }

 private:
  Complex z_;
};

/// Symmetric matrix with entries N^{-1/2} x_{ij}.
Eigen::MatrixXd build_matrix(const WignerLayout& layout,
                             std::span<const double> x);

/// G = (A(x) - zI)^{-1} with G^2 cached, so partials for every coordinate
/// cost O(1) each after the O(N^3) factorization.
class Resolvent {
 public:
  Resolvent(const WignerLayout& layout, std::span<const double> x,
            SpectralPoint z);

  const Eigen::MatrixXcd& G() const { return G_; }
  const Eigen::MatrixXcd& G2() const { return G2_; }
  /// (1/N) tr G.
  Complex stieltjes() const;
  /// (d1, d2, d3) of the Stieltjes transform in coordinate k.
  std::array<Complex, 3> partials(std::size_t k) const;
  /// max |((A - zI) G - I)_{ab}|.
  double residual() const;
  /// max |G - G^T|.
  double asymmetry() const;

 private:
  const WignerLayout& layout_;
  Eigen::MatrixXd A_;
  Complex z_;
  Eigen::MatrixXcd G_;
  Eigen::MatrixXcd G2_;
};

Complex stieltjes(const WignerLayout& layout, std::span<const double> x,
                  SpectralPoint z);
std::array<Complex, 3> stieltjes_partials(const WignerLayout& layout,
                                          std::span<const double> x,
                                          SpectralPoint z,
                                          std::size_t coordinate);

struct WignerDerivativeBounds {
  double b1;  // 2 |v|^{-2} N^{-3/2}
  double b2;  // 4 |v|^{-3} N^{-2}
  double b3;  // 12 |v|^{-4} N^{-5/2}
  double lambda2;  // 4 max{|v|^{-4}, |v|^{-3}} N^{-2}
  double lambda3;  // 12 max{|v|^{-6}, |v|^{-4}} N^{-5/2}
};

/// Throws std::invalid_argument if v == 0.
WignerDerivativeBounds derivative_bounds(std::size_t N, double v);

/// Stieltjes transform of the semicircle law, branch with
/// sign(Im m) = sign(Im z). Throws std::invalid_argument for real z.
Complex semicircle_stieltjes(Complex z);

/// N^{-2} sum_{i<=j} E(X_ij^2; |X_ij| > eps sqrt(N)). specs has one entry
/// per coordinate.
double pastur_term(std::span<const DistributionSpec> specs, std::size_t N,
                   double epsilon);
/// i.i.d. entries.
double pastur_term(const DistributionSpec& spec, std::size_t N, double epsilon);

/// Re f or Im f of the Stieltjes transform as a SmoothFunction.
class StieltjesPart final : public SmoothFunction {
 public:
  enum class Part { Real, Imag };
  StieltjesPart(const WignerLayout& layout, SpectralPoint z, Part part)
      : layout_(layout), z_(z), part_(part) {}
  std::size_t dimension() const override { return layout_.coordinates(); }
  double value(std::span<const double> x) const override;
  double partial(std::span<const double> x, std::size_t i,
                 int order) const override;
  std::string name() const override;

 private:
  const WignerLayout& layout_;
  SpectralPoint z_;
  Part part_;
};

struct SemicircleResult {
  GapReport real_part;
  GapReport imag_part;
  Complex mean_m_x;   // mean Stieltjes value under X
  Complex mean_m_y;   // mean Stieltjes value under Y
  Complex mean_m;     // pooled over both
  Complex m_semicircle;
  double K;
};

/// Paired Monte Carlo on Re f and Im f with the theorem1_bound built from
/// derivative_bounds and K = epsilon sqrt(N). lambda_r(Re f), lambda_r(Im f)
/// are bounded by lambda_r(f).
SemicircleResult semicircle_experiment(const DistributionSpec& spec_x,
                                       const DistributionSpec& spec_y,
                                       std::size_t N, SpectralPoint z,
                                       const TestFunction& g,
                                       const McOptions& options,
                                       double epsilon = 1.0);

}  // namespace lindeberg
