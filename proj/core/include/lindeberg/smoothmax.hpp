#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"
#include "lindeberg/lindeberg.hpp"

namespace lindeberg {

/// Value and coordinate-i partials of one family member at a point.
struct MemberPartials {
  double value;
  double d1;
  double d2;
  double d3;
};

/// A finite family of coordinatewise thrice-differentiable functions on a
/// common domain I^n. Members are visited, never materialized, so families
/// of size 2^N cost O(1) memory. Both visitors must enumerate members in the
/// same order.
class FunctionFamily {
 public:
  virtual ~FunctionFamily() = default;

  virtual std::size_t dimension() const = 0;
  virtual Interval domain() const { return Interval::real_line(); }
  /// log |F|.
  virtual double log_size() const = 0;
  /// Family-wide sups C_r of |d^r f / dx_i^r|, r = 1, 2, 3.
  virtual std::array<double, 3> derivative_sups() const = 0;

  virtual void for_each_value(std::span<const double> x,
                              const std::function<void(double)>& visit) const = 0;
  virtual void for_each_partials(
      std::span<const double> x, std::size_t i,
      const std::function<void(const MemberPartials&)>& visit) const = 0;

  /// lambda_r(F) from the C_r: lambda_r = max_{p<=r} C_p^{r/p}. Exact when
  /// each C_p is attained, as for the linear families shipped here.
  LambdaEstimate analytic_lambda() const;
};

/// A family given as an explicit list of SmoothFunctions plus certified C_r.
class ExplicitFamily final : public FunctionFamily {
 public:
  ExplicitFamily(std::vector<std::shared_ptr<const SmoothFunction>> members,
                 std::array<double, 3> derivative_sups);

  std::size_t dimension() const override;
  Interval domain() const override;
  double log_size() const override;
  std::array<double, 3> derivative_sups() const override { return sups_; }
  std::size_t size() const { return members_.size(); }
  const SmoothFunction& member(std::size_t k) const { return *members_[k]; }

  void for_each_value(std::span<const double> x,
                      const std::function<void(double)>& visit) const override;
  void for_each_partials(
      std::span<const double> x, std::size_t i,
      const std::function<void(const MemberPartials&)>& visit) const override;

 private:
  std::vector<std::shared_ptr<const SmoothFunction>> members_;
  std::array<double, 3> sups_;
};

/// Gibbs weights, scores and their coordinate-i derivatives at one point,
/// computed through the recursion dp -> d(e) -> d2p -> d2(e).
struct SoftMaxState {
  double alpha = 1.0;
  std::size_t coordinate = 0;
  double max_value = 0.0;      // max_f f(x)
  double log_sum_shifted = 0;  // log sum_f exp(alpha (f - max))

  std::vector<double> weights;    // p(x, f)
  std::vector<double> scores;     // a_i = alpha d_i f
  std::vector<double> scores_d1;  // d_i a_i
  std::vector<double> scores_d2;  // d_i^2 a_i
  std::vector<double> weights_d1;  // d_i p = (a_i - e_i) p
  std::vector<double> weights_d2;  // d_i^2 p

  double e = 0.0;     // e_i = sum a_i p
  double e_d1 = 0.0;  // d_i e_i
  double e_d2 = 0.0;  // d_i^2 e_i

  /// F_alpha(x) - max_f f(x) = alpha^{-1} log sum exp(alpha (f - max)).
  double excess() const { return log_sum_shifted / alpha; }
  double value() const { return max_value + excess(); }
  /// d_i^order F_alpha = alpha^{-1} d_i^{order-1} e_i.
  double partial(int order) const;
};

SoftMaxState softmax_state(const FunctionFamily& family, double alpha,
                           std::span<const double> x, std::size_t i);

/// alpha^{-1} log sum_f e^{alpha f(x)}, max-shifted. Two streaming passes.
double softmax_value(const FunctionFamily& family, double alpha,
                     std::span<const double> x);

/// (d_i F, d_i^2 F, d_i^3 F), streaming with O(1) memory.
std::array<double, 3> softmax_partials(const FunctionFamily& family,
                                       double alpha, std::span<const double> x,
                                       std::size_t i);

/// Proof-chain ratios |lhs| / rhs for the five chain inequalities; each is
/// <= 1 when the inequalities hold. Weight inequalities take the max over
/// members with p > 0.
struct ProofChainRatios {
  double e;         // |e_i| <= alpha C1
  double weight_d1;  // |d p| <= 2 alpha C1 p
  double e_d1;       // |d e_i| <= alpha^2 (C2 + 2 C1^2)
  double weight_d2;  // |d^2 p| <= alpha^2 (2 C2 + 6 C1^2) p
  double e_d2;       // |d^2 e_i| <= alpha^3 (C3 + 6 C1 C2 + 6 C1^3)
};
ProofChainRatios proof_chain_ratios(const SoftMaxState& state,
                                    const std::array<double, 3>& sups);

/// F_alpha wrapped as a SmoothFunction.
class SoftMaxFunction final : public SmoothFunction {
 public:
  SoftMaxFunction(std::shared_ptr<const FunctionFamily> family, double alpha);
  std::size_t dimension() const override { return family_->dimension(); }
  Interval domain() const override { return family_->domain(); }
  double value(std::span<const double> x) const override;
  double partial(std::span<const double> x, std::size_t i,
                 int order) const override;
  std::string name() const override { return "softmax"; }
  double alpha() const { return alpha_; }

 private:
  std::shared_ptr<const FunctionFamily> family_;
  double alpha_;
};

struct SoftMaxLambdaBounds {
  double lambda2;  // 3 alpha lambda2(F)
  double lambda3;  // 13 alpha^2 lambda3(F)
};

/// Throws std::invalid_argument if alpha < 1.
SoftMaxLambdaBounds theorem2_lambda_bounds(double lambda2_family,
                                           double lambda3_family, double alpha);
SoftMaxLambdaBounds theorem2_lambda_bounds(const FunctionFamily& family,
                                           double alpha);

/// alpha^{-1} log |F|: max f <= F_alpha <= max f + this.
double uniform_gap_bound(double log_size, double alpha);
double uniform_gap_bound(const FunctionFamily& family, double alpha);

/// 2||g'|| alpha^{-1} log|F| + C1(g) (3 alpha lambda2(F)) T1(K)
///   + C2(g) (13 alpha^2 lambda3(F)) T2(K).
double theorem3_bound(const TestFunction& g, double alpha,
                      double lambda2_family, double lambda3_family,
                      double log_size, double T1K, double T2K);
double theorem3_bound(const TestFunction& g, double alpha,
                      const FunctionFamily& family, double T1K, double T2K);

/// K(g) = (19/3)||g'|| + 13||g''|| + (13/3)||g'''||.
double k_constant(const TestFunction& g);

struct Corollary2Result {
  double alpha;  // [(gamma n lambda3)^{-2/3} (log|F|)^{2/3} + 1]^{1/2}
  double bound;  // K(g)[(gamma n lambda3)^{1/3}(log|F|)^{2/3} + gamma n lambda3]
};

/// Throws std::domain_error when gamma is infinite.
Corollary2Result corollary2_bound(const TestFunction& g,
                                  const ExtendedReal& gamma, std::size_t n,
                                  double lambda3_family, double log_size);
Corollary2Result corollary2_bound(const TestFunction& g,
                                  const ExtendedReal& gamma, std::size_t n,
                                  const FunctionFamily& family);

}  // namespace lindeberg
