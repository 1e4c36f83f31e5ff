#include "lindeberg/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lindeberg/lindeberg.hpp"
#include "lindeberg/random.hpp"

namespace lindeberg {

bool GapReport::passed() const {
  return mc_gap <= theoretical_bound + 3.0 * std_error;
}

double PairedChannel::gap() const { return std::abs(mean_gx - mean_gy); }

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads),
                                                  std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void draw_coordinates(std::span<const DistributionSpec> specs,
                      RandomStream& stream, std::span<double> out) {
  if (specs.size() != out.size()) {
    throw std::invalid_argument("draw_coordinates: length mismatch");
  }
  std::size_t begin = 0;
  while (begin < specs.size()) {
    std::size_t end = begin + 1;
    while (end < specs.size() && specs[end] == specs[begin]) ++end;
    specs[begin].fill(stream, out.subspan(begin, end - begin));
    begin = end;
  }
}

std::vector<PairedChannel> paired_monte_carlo(
    std::size_t n, std::size_t outputs, const Statistic& statistic,
    const TestFunction& g, std::span<const DistributionSpec> specs_x,
    std::span<const DistributionSpec> specs_y, const McOptions& options) {
  const std::size_t R = options.replicates;
  if (R < 100) {
    throw std::invalid_argument("paired_monte_carlo: replicates must be >= 100");
  }
  if (specs_x.size() != n || specs_y.size() != n) {
    throw std::invalid_argument(
        "paired_monte_carlo: spec lists must have one entry per coordinate");
  }
  if (outputs == 0) {
    throw std::invalid_argument("paired_monte_carlo: no outputs requested");
  }
  const std::uint64_t id = experiment_id(options.experiment_id.c_str());

  // Per-replicate results, indexed so the reduction order is fixed.
  std::vector<double> ux(R * outputs), uy(R * outputs);
  parallel_for(R, options.threads, [&](std::size_t r) {
    std::vector<double> x(n), y(n);
    auto stream_x = RandomStream::derive(options.master_seed, id, r, 0);
    auto stream_y = RandomStream::derive(options.master_seed, id, r, 1);
    draw_coordinates(specs_x, stream_x, x);
    draw_coordinates(specs_y, stream_y, y);
    statistic(x, std::span<double>(ux.data() + r * outputs, outputs));
    statistic(y, std::span<double>(uy.data() + r * outputs, outputs));
  });

  std::vector<PairedChannel> channels(outputs);
  const double Rd = static_cast<double>(R);
  for (std::size_t c = 0; c < outputs; ++c) {
    CompensatedSum sum_gx, sum_gy, sum_x, sum_y;
    std::vector<double> diff(R);
    for (std::size_t r = 0; r < R; ++r) {
      const double u = ux[r * outputs + c];
      const double v = uy[r * outputs + c];
      const double gu = g.value(u);
      const double gv = g.value(v);
      sum_gx.add(gu);
      sum_gy.add(gv);
      sum_x.add(u);
      sum_y.add(v);
      diff[r] = gu - gv;
    }
    PairedChannel& ch = channels[c];
    ch.mean_gx = sum_gx.value() / Rd;
    ch.mean_gy = sum_gy.value() / Rd;
    ch.mean_x = sum_x.value() / Rd;
    ch.mean_y = sum_y.value() / Rd;
    const double mean_diff = ch.mean_gx - ch.mean_gy;
    CompensatedSum ss;
    for (double d : diff) ss.add((d - mean_diff) * (d - mean_diff));
    ch.std_error = std::sqrt(ss.value() / (Rd - 1.0)) / std::sqrt(Rd);
  }
  return channels;
}

GapReport make_report(const PairedChannel& channel, std::size_t n,
                      double theoretical_bound, const McOptions& options) {
  GapReport report;
  report.experiment_id = options.experiment_id;
  report.n = n;
  report.replicates = options.replicates;
  report.mc_gap = channel.gap();
  report.std_error = channel.std_error;
  report.theoretical_bound = theoretical_bound;
  report.seed = options.master_seed;
  return report;
}

GapReport mc_gap(const SmoothFunction& f, const TestFunction& g,
                 std::span<const DistributionSpec> specs_x,
                 std::span<const DistributionSpec> specs_y,
                 double theoretical_bound, const McOptions& options) {
  const std::size_t n = f.dimension();
  auto statistic = [&f](std::span<const double> x, std::span<double> out) {
    out[0] = f.value(x);
  };
  const auto channels =
      paired_monte_carlo(n, 1, statistic, g, specs_x, specs_y, options);
  return make_report(channels[0], n, theoretical_bound, options);
}

}  // namespace lindeberg
