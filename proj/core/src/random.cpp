#include "lindeberg/random.hpp"

namespace lindeberg {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream RandomStream::derive(std::uint64_t master_seed,
                                  std::uint64_t experiment,
                                  std::uint64_t replicate_index,
                                  std::uint64_t substream) noexcept {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = mix64(k ^ (experiment + 1 * kGolden));
  k = mix64(k ^ (replicate_index + 2 * kGolden));
  k = mix64(k ^ (substream + 3 * kGolden));
  return RandomStream(k);
}

RandomStream::result_type RandomStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform_open() noexcept {
  // (k + 0.5) / 2^53 for k in [0, 2^53) never hits 0 or 1.
  const std::uint64_t k = (*this)() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

std::uint64_t experiment_id(const char* name) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p = name; *p != '\0'; ++p) {
    h ^= static_cast<unsigned char>(*p);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lindeberg
