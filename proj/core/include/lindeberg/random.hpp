#pragma once

#include <cstdint>
#include <limits>

namespace lindeberg {

// Counter-based generator: the n-th output is a pure function of (key, n),
// so any replicate can be regenerated without replaying earlier ones.
// Satisfies UniformRandomBitGenerator for use with <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}

  static RandomStream derive(std::uint64_t master_seed,
                             std::uint64_t experiment_id,
                             std::uint64_t replicate_index,
                             std::uint64_t substream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in the open interval (0, 1), 53 bits of resolution.
  double uniform_open() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Stable 64-bit id for an experiment name (FNV-1a).
std::uint64_t experiment_id(const char* name) noexcept;

}  // namespace lindeberg
