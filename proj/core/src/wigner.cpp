#include "lindeberg/wigner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lindeberg/lindeberg.hpp"

namespace lindeberg {

WignerLayout::WignerLayout(std::size_t N) : N_(N) {
  if (N == 0) throw std::invalid_argument("WignerLayout: N must be positive");
  entries_.reserve(N * (N + 1) / 2);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i; j < N; ++j) entries_.emplace_back(i, j);
  }
}

std::size_t WignerLayout::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= N_) throw std::out_of_range("WignerLayout: entry out of range");
  return i * N_ - i * (i - 1) / 2 + (j - i);
}

std::pair<std::size_t, std::size_t> WignerLayout::entry(std::size_t k) const {
  if (k >= entries_.size()) {
    throw std::out_of_range("WignerLayout: coordinate out of range");
  }
  return entries_[k];
}

SpectralPoint::SpectralPoint(Complex z) : z_(z) {
  if (!(z.imag() != 0.0) || !std::isfinite(z.imag()) ||
      !std::isfinite(z.real())) {
    throw std::invalid_argument("spectral point must have Im z != 0");
  }
}

Eigen::MatrixXd build_matrix(const WignerLayout& layout,
                             std::span<const double> x) {
  if (x.size() != layout.coordinates()) {
    throw std::invalid_argument("build_matrix: length mismatch");
  }
  const std::size_t N = layout.order();
  const double s = 1.0 / std::sqrt(static_cast<double>(N));
  Eigen::MatrixXd A(N, N);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto [i, j] = layout.entry(k);
    A(i, j) = s * x[k];
    A(j, i) = s * x[k];
  }
  return A;
}

Resolvent::Resolvent(const WignerLayout& layout, std::span<const double> x,
                     SpectralPoint z)
    : layout_(layout), A_(build_matrix(layout, x)), z_(z.z()) {
  const auto N = static_cast<Eigen::Index>(layout.order());
  Eigen::MatrixXcd M = A_.cast<Complex>();
  M.diagonal().array() -= z_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  G_ = lu.solve(Eigen::MatrixXcd::Identity(N, N));
  if (!G_.allFinite()) {
    throw std::runtime_error("Resolvent: singular factorization");
  }
  G2_ = G_ * G_;
}

Complex Resolvent::stieltjes() const {
  return G_.trace() / static_cast<double>(layout_.order());
}

std::array<Complex, 3> Resolvent::partials(std::size_t k) const {
  const auto [i, j] = layout_.entry(k);
  const double N = static_cast<double>(layout_.order());
  const double s = 1.0 / std::sqrt(N);
  // dA/dx_k = s P J P^T with P = [e_i e_j], J = [[0,1],[1,0]] (or s e_i e_i^T
  // on the diagonal), so every trace reduces to 2x2 blocks of G and G^2.
  Complex t1, t2, t3;
  if (i == j) {
    const Complex g = G_(i, i);
    const Complex h = G2_(i, i);
    t1 = s * h;
    t2 = s * s * g * h;
    t3 = s * s * s * g * g * h;
  } else {
    Eigen::Matrix2cd g, h, J;
    g << G_(i, i), G_(i, j), G_(j, i), G_(j, j);
    h << G2_(i, i), G2_(i, j), G2_(j, i), G2_(j, j);
    J << 0.0, 1.0, 1.0, 0.0;
    const Eigen::Matrix2cd Jg = J * g;
    t1 = s * (J * h).trace();
    t2 = s * s * (Jg * J * h).trace();
    t3 = s * s * s * (Jg * Jg * J * h).trace();
  }
  return {-t1 / N, 2.0 * t2 / N, -6.0 * t3 / N};
}

double Resolvent::residual() const {
  const auto N = static_cast<Eigen::Index>(layout_.order());
  Eigen::MatrixXcd M = A_.cast<Complex>();
  M.diagonal().array() -= z_;
  return (M * G_ - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
}

double Resolvent::asymmetry() const {
  return (G_ - G_.transpose()).cwiseAbs().maxCoeff();
}

Complex stieltjes(const WignerLayout& layout, std::span<const double> x,
                  SpectralPoint z) {
  // only the diagonal of G is needed: no G^2
  const auto N = static_cast<Eigen::Index>(layout.order());
  Eigen::MatrixXcd M = build_matrix(layout, x).cast<Complex>();
  M.diagonal().array() -= z.z();
  const Eigen::MatrixXcd G =
      Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(Eigen::MatrixXcd::Identity(N, N));
  if (!G.allFinite()) throw std::runtime_error("stieltjes: singular factorization");
  return G.trace() / static_cast<double>(N);
}

std::array<Complex, 3> stieltjes_partials(const WignerLayout& layout,
                                          std::span<const double> x,
                                          SpectralPoint z,
                                          std::size_t coordinate) {
  if (coordinate >= layout.coordinates()) {
    throw std::out_of_range("stieltjes_partials: coordinate out of range");
  }
  return Resolvent(layout, x, z).partials(coordinate);
}

WignerDerivativeBounds derivative_bounds(std::size_t N, double v) {
  if (v == 0.0 || !std::isfinite(v)) {
    throw std::invalid_argument("derivative_bounds: v must be nonzero");
  }
  if (N == 0) throw std::invalid_argument("derivative_bounds: N must be positive");
  const double a = 1.0 / std::abs(v);
  const double Nd = static_cast<double>(N);
  WignerDerivativeBounds b{};
  b.b1 = 2.0 * a * a * std::pow(Nd, -1.5);
  b.b2 = 4.0 * a * a * a * std::pow(Nd, -2.0);
  b.b3 = 12.0 * std::pow(a, 4) * std::pow(Nd, -2.5);
  b.lambda2 = 4.0 * std::max(std::pow(a, 4), std::pow(a, 3)) * std::pow(Nd, -2.0);
  b.lambda3 = 12.0 * std::max(std::pow(a, 6), std::pow(a, 4)) * std::pow(Nd, -2.5);
  return b;
}

Complex semicircle_stieltjes(Complex z) {
  if (z.imag() == 0.0) {
    throw std::invalid_argument("semicircle_stieltjes: z must be non-real");
  }
  const Complex root = std::sqrt(z * z - 4.0);
  const Complex m = 0.5 * (-z + root);
  if (std::signbit(m.imag()) == std::signbit(z.imag()) && m.imag() != 0.0) {
    return m;
  }
  return 0.5 * (-z - root);
}

double pastur_term(std::span<const DistributionSpec> specs, std::size_t N,
                   double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("pastur_term: epsilon must be positive");
  }
  if (specs.size() != N * (N + 1) / 2) {
    throw std::invalid_argument("pastur_term: need one spec per coordinate");
  }
  const double Nd = static_cast<double>(N);
  const double K = epsilon * std::sqrt(Nd);
  CompensatedSum sum;
  for (const auto& spec : specs) sum.add(truncated_second_moment(spec, K));
  return sum.value() / (Nd * Nd);
}

double pastur_term(const DistributionSpec& spec, std::size_t N,
                   double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("pastur_term: epsilon must be positive");
  }
  const double Nd = static_cast<double>(N);
  const double n = Nd * (Nd + 1.0) / 2.0;
  return n * truncated_second_moment(spec, epsilon * std::sqrt(Nd)) / (Nd * Nd);
}

double StieltjesPart::value(std::span<const double> x) const {
  const Complex m = stieltjes(layout_, x, z_);
  return part_ == Part::Real ? m.real() : m.imag();
}

double StieltjesPart::partial(std::span<const double> x, std::size_t i,
                              int order) const {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("order must be 1, 2 or 3");
  }
  const Complex d = stieltjes_partials(layout_, x, z_, i)[order - 1];
  return part_ == Part::Real ? d.real() : d.imag();
}

std::string StieltjesPart::name() const {
  return part_ == Part::Real ? "stieltjes_re" : "stieltjes_im";
}

SemicircleResult semicircle_experiment(const DistributionSpec& spec_x,
                                       const DistributionSpec& spec_y,
                                       std::size_t N, SpectralPoint z,
                                       const TestFunction& g,
                                       const McOptions& options,
                                       double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("semicircle_experiment: epsilon must be > 0");
  }
  const WignerLayout layout(N);
  const std::size_t n = layout.coordinates();
  const std::vector<DistributionSpec> xs(n, spec_x), ys(n, spec_y);

  const Complex zz = z.z();
  auto statistic = [&](std::span<const double> x, std::span<double> out) {
    const Complex m = stieltjes(layout, x, z);
    out[0] = m.real();
    out[1] = m.imag();
  };
  const auto channels =
      paired_monte_carlo(n, 2, statistic, g, xs, ys, options);

  const auto bounds = derivative_bounds(N, z.v());
  const double K = epsilon * std::sqrt(static_cast<double>(N));
  const auto sums = truncated_sums(spec_x, spec_y, n, K);
  const auto C = c_constants(g);
  const double bound =
      theorem1_bound(C.C1, C.C2, bounds.lambda2, bounds.lambda3, sums.T1K, sums.T2K);

  SemicircleResult result;
  McOptions re_opts = options, im_opts = options;
  re_opts.experiment_id += ":re";
  im_opts.experiment_id += ":im";
  result.real_part = make_report(channels[0], n, bound, re_opts);
  result.imag_part = make_report(channels[1], n, bound, im_opts);
  result.mean_m_x = {channels[0].mean_x, channels[1].mean_x};
  result.mean_m_y = {channels[0].mean_y, channels[1].mean_y};
  result.mean_m = 0.5 * (result.mean_m_x + result.mean_m_y);
  result.m_semicircle = semicircle_stieltjes(zz);
  result.K = K;
  return result;
}

}  // namespace lindeberg
