#include "lindeberg/smoothmax.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindeberg {

namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 1.0)) {
    throw std::invalid_argument("soft-max parameter alpha must be >= 1");
  }
}

double max_member_value(const FunctionFamily& family,
                        std::span<const double> x) {
  double best = -std::numeric_limits<double>::infinity();
  family.for_each_value(x, [&best](double v) { best = std::max(best, v); });
  if (!std::isfinite(best)) {
    throw std::invalid_argument("soft-max over an empty family");
  }
  return best;
}

}  // namespace

LambdaEstimate FunctionFamily::analytic_lambda() const {
  return lambda_from_order_sups(derivative_sups(), LambdaKind::AnalyticBound);
}

ExplicitFamily::ExplicitFamily(
    std::vector<std::shared_ptr<const SmoothFunction>> members,
    std::array<double, 3> derivative_sups)
    : members_(std::move(members)), sups_(derivative_sups) {
  if (members_.empty()) {
    throw std::invalid_argument("ExplicitFamily: empty family");
  }
  const std::size_t n = members_.front()->dimension();
  for (const auto& m : members_) {
    if (!m || m->dimension() != n) {
      throw std::invalid_argument("ExplicitFamily: members differ in dimension");
    }
  }
}

std::size_t ExplicitFamily::dimension() const {
  return members_.front()->dimension();
}

Interval ExplicitFamily::domain() const { return members_.front()->domain(); }

double ExplicitFamily::log_size() const {
  return std::log(static_cast<double>(members_.size()));
}

void ExplicitFamily::for_each_value(
    std::span<const double> x, const std::function<void(double)>& visit) const {
  for (const auto& m : members_) visit(m->value(x));
}

void ExplicitFamily::for_each_partials(
    std::span<const double> x, std::size_t i,
    const std::function<void(const MemberPartials&)>& visit) const {
  for (const auto& m : members_) {
    visit({m->value(x), m->partial(x, i, 1), m->partial(x, i, 2),
           m->partial(x, i, 3)});
  }
}

double SoftMaxState::partial(int order) const {
  switch (order) {
    case 1: return e / alpha;
    case 2: return e_d1 / alpha;
    case 3: return e_d2 / alpha;
    default: throw std::invalid_argument("order must be 1, 2 or 3");
  }
}

SoftMaxState softmax_state(const FunctionFamily& family, double alpha,
                           std::span<const double> x, std::size_t i) {
  require_alpha(alpha);
  if (i >= family.dimension()) throw std::out_of_range("coordinate out of range");
  SoftMaxState s;
  s.alpha = alpha;
  s.coordinate = i;
  s.max_value = max_member_value(family, x);

  std::vector<double> psi;
  family.for_each_partials(x, i, [&](const MemberPartials& m) {
    psi.push_back(std::exp(alpha * (m.value - s.max_value)));
    s.scores.push_back(alpha * m.d1);
    s.scores_d1.push_back(alpha * m.d2);
    s.scores_d2.push_back(alpha * m.d3);
  });
  const std::size_t count = psi.size();
  const double Z = compensated_sum(psi);
  s.log_sum_shifted = std::log(Z);

  s.weights.resize(count);
  CompensatedSum e;
  for (std::size_t k = 0; k < count; ++k) {
    s.weights[k] = psi[k] / Z;
    e.add(s.scores[k] * s.weights[k]);
  }
  s.e = e.value();

  // dp = (a - e) p;  d(e) = sum (p da + a dp)
  s.weights_d1.resize(count);
  CompensatedSum e_d1;
  for (std::size_t k = 0; k < count; ++k) {
    s.weights_d1[k] = (s.scores[k] - s.e) * s.weights[k];
    e_d1.add(s.weights[k] * s.scores_d1[k] + s.scores[k] * s.weights_d1[k]);
  }
  s.e_d1 = e_d1.value();

  // d2p = (da - de) p + (a - e)^2 p;  d2(e) = sum (p d2a + 2 da dp + a d2p)
  s.weights_d2.resize(count);
  CompensatedSum e_d2;
  for (std::size_t k = 0; k < count; ++k) {
    const double centered = s.scores[k] - s.e;
    s.weights_d2[k] = (s.scores_d1[k] - s.e_d1) * s.weights[k] +
                      centered * centered * s.weights[k];
    e_d2.add(s.weights[k] * s.scores_d2[k] +
             2.0 * s.scores_d1[k] * s.weights_d1[k] +
             s.scores[k] * s.weights_d2[k]);
  }
  s.e_d2 = e_d2.value();
  return s;
}

double softmax_value(const FunctionFamily& family, double alpha,
                     std::span<const double> x) {
  require_alpha(alpha);
  const double top = max_member_value(family, x);
  CompensatedSum sum;
  family.for_each_value(
      x, [&](double v) { sum.add(std::exp(alpha * (v - top))); });
  return top + std::log(sum.value()) / alpha;
}

std::array<double, 3> softmax_partials(const FunctionFamily& family,
                                       double alpha, std::span<const double> x,
                                       std::size_t i) {
  require_alpha(alpha);
  if (i >= family.dimension()) throw std::out_of_range("coordinate out of range");
  const double top = max_member_value(family, x);

  CompensatedSum z, weighted_scores;
  family.for_each_partials(x, i, [&](const MemberPartials& m) {
    const double psi = std::exp(alpha * (m.value - top));
    z.add(psi);
    weighted_scores.add(alpha * m.d1 * psi);
  });
  const double Z = z.value();
  const double e = weighted_scores.value() / Z;

  CompensatedSum e_d1_sum;
  family.for_each_partials(x, i, [&](const MemberPartials& m) {
    const double p = std::exp(alpha * (m.value - top)) / Z;
    const double a = alpha * m.d1;
    const double da = alpha * m.d2;
    const double dp = (a - e) * p;
    e_d1_sum.add(p * da + a * dp);
  });
  const double e_d1 = e_d1_sum.value();

  CompensatedSum e_d2_sum;
  family.for_each_partials(x, i, [&](const MemberPartials& m) {
    const double p = std::exp(alpha * (m.value - top)) / Z;
    const double a = alpha * m.d1;
    const double da = alpha * m.d2;
    const double d2a = alpha * m.d3;
    const double dp = (a - e) * p;
    const double d2p = (da - e_d1) * p + (a - e) * (a - e) * p;
    e_d2_sum.add(p * d2a + 2.0 * da * dp + a * d2p);
  });
  return {e / alpha, e_d1 / alpha, e_d2_sum.value() / alpha};
}

ProofChainRatios proof_chain_ratios(const SoftMaxState& state,
                                    const std::array<double, 3>& sups) {
  const double a = state.alpha;
  const auto [C1, C2, C3] = sups;
  auto ratio = [](double lhs, double rhs) {
    if (rhs > 0.0) return std::abs(lhs) / rhs;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  ProofChainRatios r{};
  r.e = ratio(state.e, a * C1);
  r.e_d1 = ratio(state.e_d1, a * a * (C2 + 2.0 * C1 * C1));
  r.e_d2 = ratio(state.e_d2, a * a * a * (C3 + 6.0 * C1 * C2 + 6.0 * C1 * C1 * C1));
  r.weight_d1 = 0.0;
  r.weight_d2 = 0.0;
  for (std::size_t k = 0; k < state.weights.size(); ++k) {
    const double p = state.weights[k];
    if (p <= 0.0) continue;
    r.weight_d1 = std::max(r.weight_d1, ratio(state.weights_d1[k], 2.0 * a * C1 * p));
    r.weight_d2 = std::max(
        r.weight_d2,
        ratio(state.weights_d2[k], a * a * (2.0 * C2 + 6.0 * C1 * C1) * p));
  }
  return r;
}

SoftMaxFunction::SoftMaxFunction(std::shared_ptr<const FunctionFamily> family,
                                 double alpha)
    : family_(std::move(family)), alpha_(alpha) {
  require_alpha(alpha);
  if (!family_) throw std::invalid_argument("SoftMaxFunction: null family");
}

double SoftMaxFunction::value(std::span<const double> x) const {
  return softmax_value(*family_, alpha_, x);
}

double SoftMaxFunction::partial(std::span<const double> x, std::size_t i,
                                int order) const {
  if (order < 1 || order > 3) {
    throw std::invalid_argument("order must be 1, 2 or 3");
  }
  return softmax_partials(*family_, alpha_, x, i)[order - 1];
}

SoftMaxLambdaBounds theorem2_lambda_bounds(double lambda2_family,
                                           double lambda3_family,
                                           double alpha) {
  require_alpha(alpha);
  if (lambda2_family < 0.0 || lambda3_family < 0.0) {
    throw std::invalid_argument("theorem2_lambda_bounds: negative lambda");
  }
  return {3.0 * alpha * lambda2_family, 13.0 * alpha * alpha * lambda3_family};
}

SoftMaxLambdaBounds theorem2_lambda_bounds(const FunctionFamily& family,
                                           double alpha) {
  const auto lam = family.analytic_lambda();
  return theorem2_lambda_bounds(lam.lambda2, lam.lambda3, alpha);
}

double uniform_gap_bound(double log_size, double alpha) {
  require_alpha(alpha);
  return log_size / alpha;
}

double uniform_gap_bound(const FunctionFamily& family, double alpha) {
  return uniform_gap_bound(family.log_size(), alpha);
}

double theorem3_bound(const TestFunction& g, double alpha,
                      double lambda2_family, double lambda3_family,
                      double log_size, double T1K, double T2K) {
  if (log_size < 0.0) {
    throw std::invalid_argument("theorem3_bound: negative log size");
  }
  const auto lam = theorem2_lambda_bounds(lambda2_family, lambda3_family, alpha);
  const auto C = c_constants(g);
  return 2.0 * g.norm1 * uniform_gap_bound(log_size, alpha) +
         theorem1_bound(C.C1, C.C2, lam.lambda2, lam.lambda3, T1K, T2K);
}

double theorem3_bound(const TestFunction& g, double alpha,
                      const FunctionFamily& family, double T1K, double T2K) {
  const auto lam = family.analytic_lambda();
  return theorem3_bound(g, alpha, lam.lambda2, lam.lambda3, family.log_size(),
                        T1K, T2K);
}

double k_constant(const TestFunction& g) {
  // 26 C2(g) from the K -> inf tail, plus 2||g'|| on the log|F| term.
  return 19.0 / 3.0 * g.norm1 + 13.0 * g.norm2 + 13.0 / 3.0 * g.norm3;
}

Corollary2Result corollary2_bound(const TestFunction& g,
                                  const ExtendedReal& gamma, std::size_t n,
                                  double lambda3_family, double log_size) {
  if (!gamma.is_finite()) {
    throw std::domain_error(
        "corollary2_bound: gamma is infinite; use theorem3_bound with a "
        "finite truncation level K");
  }
  if (lambda3_family < 0.0 || log_size < 0.0) {
    throw std::invalid_argument("corollary2_bound: negative input");
  }
  c_constants(g);  // rejects infinite norms
  const double s = gamma.value() * static_cast<double>(n) * lambda3_family;
  const double Kg = k_constant(g);
  if (s == 0.0) {
    // Members do not depend on the inputs beyond the log|F| smoothing term,
    // which alpha -> infinity removes.
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  const double log_term = std::pow(log_size, 2.0 / 3.0);
  const double alpha = std::sqrt(std::pow(s, -2.0 / 3.0) * log_term + 1.0);
  return {alpha, Kg * (std::cbrt(s) * log_term + s)};
}

Corollary2Result corollary2_bound(const TestFunction& g,
                                  const ExtendedReal& gamma, std::size_t n,
                                  const FunctionFamily& family) {
  return corollary2_bound(g, gamma, n, family.analytic_lambda().lambda3,
                          family.log_size());
}

}  // namespace lindeberg
