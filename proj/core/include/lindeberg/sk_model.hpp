#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"
#include "lindeberg/monte_carlo.hpp"
#include "lindeberg/smoothmax.hpp"

namespace lindeberg {

/// Largest N for which free_energy / ground_state enumerate exhaustively.
inline constexpr std::size_t kMaxEnumerationSpins = 24;

using Spins = std::vector<std::int8_t>;

/// Flat coordinates x_k <-> pairs (i, j), i < j, row-major, 0-based.
class CouplingLayout {
 public:
  explicit CouplingLayout(std::size_t N);

  std::size_t spins() const { return N_; }
  std::size_t coordinates() const { return pairs_.size(); }
  std::size_t index(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> pair(std::size_t k) const;

 private:
  std::size_t N_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

struct SKParams {
  double beta = 1.0;
  double h = 0.0;

  /// Throws std::invalid_argument unless beta > 0.
  static SKParams make(double beta, double h);
};

struct GroundStateBoundParams {
  double A = 1.0;
  double epsilon = 1.0;

  /// Throws std::invalid_argument unless A >= 1 and epsilon > 0.
  static GroundStateBoundParams make(double A, double epsilon);
};

/// f_sigma(x) = beta N^{-3/2} sum_{i<j} x_ij s_i s_j + beta h N^{-1} sum_i s_i.
double family_member(const CouplingLayout& layout, const SKParams& params,
                     std::span<const std::int8_t> sigma,
                     std::span<const double> x);

/// The 2^N members f_sigma, enumerated in binary order of sigma.
class SKFamily final : public FunctionFamily {
 public:
  SKFamily(std::size_t N, SKParams params);

  std::size_t dimension() const override { return layout_.coordinates(); }
  double log_size() const override;
  std::array<double, 3> derivative_sups() const override;
  void for_each_value(std::span<const double> x,
                      const std::function<void(double)>& visit) const override;
  void for_each_partials(
      std::span<const double> x, std::size_t i,
      const std::function<void(const MemberPartials&)>& visit) const override;

  const CouplingLayout& layout() const { return layout_; }
  const SKParams& params() const { return params_; }

 private:
  CouplingLayout layout_;
  SKParams params_;
};

struct FamilyLambda {
  double lambda2;   // beta^2 N^{-3}
  double lambda3;   // beta^3 N^{-9/2}
  double log_size;  // N log 2
};
FamilyLambda family_lambda(const SKParams& params, std::size_t N);

/// N^{-1} log sum_sigma exp(N f_sigma(x)), by Gray-code enumeration with a
/// running log-sum-exp. Throws std::invalid_argument if N > 24.
double free_energy(const CouplingLayout& layout, const SKParams& params,
                   std::span<const double> x);

/// 3 beta^2 N^{-2} and 13 beta^3 N^{-5/2}: theorem2_lambda_bounds at alpha = N.
SoftMaxLambdaBounds free_energy_lambda(const SKParams& params, std::size_t N);

struct GroundState {
  double value;  // max_sigma sum_{i<j} x_ij s_i s_j
  Spins sigma;   // lexicographically smallest maximizer (-1 < +1)
};

/// Exhaustive maximum over the 2^{N-1} classes {sigma, -sigma}.
/// Throws std::invalid_argument if N > 24.
GroundState ground_state(const CouplingLayout& layout,
                         std::span<const double> x);

/// sum_{i<j} x_ij s_i s_j in layout order.
double pair_energy(const CouplingLayout& layout,
                   std::span<const std::int8_t> sigma,
                   std::span<const double> x);

struct GroundStateBound {
  /// theorem3_bound at alpha = A N, K = eps sqrt(N), beta = 1.
  double value;
  /// The three channels A^{-1}, A N^{-2} T1(K), A^2 eps.
  double inverse_A;
  double tail_term;
  double smoothing_term;
  /// c(g) = max{2||g'|| log 2, 3 C1(g), 13 C2(g)}; value <= c(g) * (sum of
  /// the three channels).
  double constant;
};

GroundStateBound ground_state_bound(const TestFunction& g, std::size_t N,
                                    const GroundStateBoundParams& params,
                                    const TruncatedSums& sums);
GroundStateBound ground_state_bound(const TestFunction& g, std::size_t N,
                                    const GroundStateBoundParams& params,
                                    const DistributionSpec& spec_x,
                                    const DistributionSpec& spec_y);

enum class SKKind { FreeEnergy, GroundState };

struct SKExperimentResult {
  GapReport report;
  /// Which bound was used: "corollary1", "theorem1", "corollary2" or
  /// "ground_state".
  std::string bound_route;
};

/// Paired Monte Carlo on the free energy or on max_sigma f_sigma. With finite
/// gamma the bound is corollary1 (free energy) or corollary2 (ground state);
/// otherwise theorem1 at K = eps sqrt(N) or ground_state_bound.
SKExperimentResult sk_experiment(SKKind kind, const DistributionSpec& spec_x,
                                 const DistributionSpec& spec_y,
                                 const SKParams& params, std::size_t N,
                                 const TestFunction& g, const McOptions& options,
                                 const GroundStateBoundParams& fallback = {});

}  // namespace lindeberg
