#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lindeberg/distributions.hpp"
#include "lindeberg/functions.hpp"

namespace lindeberg {

/// Monte Carlo estimate of |E g(U) - E g(V)| next to a theoretical bound.
struct GapReport {
  std::string experiment_id;
  std::size_t n = 0;
  std::size_t replicates = 0;
  double mc_gap = 0.0;
  double std_error = 0.0;
  double theoretical_bound = 0.0;
  std::uint64_t seed = 0;

  /// mc_gap <= bound + 3 std_error; false if any field is NaN.
  bool passed() const;
};

struct McOptions {
  std::size_t replicates = 1000;
  std::uint64_t master_seed = 0;
  std::string experiment_id = "experiment";
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Per-output summary of a paired run.
struct PairedChannel {
  double mean_gx = 0.0;    // mean of g(U)
  double mean_gy = 0.0;    // mean of g(V)
  double std_error = 0.0;  // sd(g(U) - g(V)) / sqrt(R)
  double mean_x = 0.0;     // mean of U
  double mean_y = 0.0;     // mean of V

  double gap() const;  // |mean_gx - mean_gy|
};

/// Writes `outputs` statistic values for one input vector. Must be safe to
/// call concurrently.
using Statistic =
    std::function<void(std::span<const double> x, std::span<double> out)>;

/// Runs R paired replicates: replicate r draws X from substream 0 and Y from
/// substream 1 of RandomStream::derive(seed, id, r, .). Results do not depend
/// on the thread count. Throws std::invalid_argument if R < 100 or the spec
/// lists do not have length n.
std::vector<PairedChannel> paired_monte_carlo(
    std::size_t n, std::size_t outputs, const Statistic& statistic,
    const TestFunction& g, std::span<const DistributionSpec> specs_x,
    std::span<const DistributionSpec> specs_y, const McOptions& options);

/// Paired estimate for g(f(X)) vs g(f(Y)), reported against the
/// caller-supplied theoretical bound.
GapReport mc_gap(const SmoothFunction& f, const TestFunction& g,
                 std::span<const DistributionSpec> specs_x,
                 std::span<const DistributionSpec> specs_y,
                 double theoretical_bound, const McOptions& options);

/// Builds a GapReport from a channel.
GapReport make_report(const PairedChannel& channel, std::size_t n,
                      double theoretical_bound, const McOptions& options);

/// Fills out[i] from specs[i], drawing runs of equal specs in one call.
void draw_coordinates(std::span<const DistributionSpec> specs,
                      RandomStream& stream, std::span<double> out);

/// Executes body(index) for index in [0, count) on `threads` workers.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

unsigned resolve_threads(unsigned requested);

}  // namespace lindeberg
