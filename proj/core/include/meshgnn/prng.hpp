#pragma once

#include <cstdint>

namespace meshgnn {

/// splitmix64 generator.
///
/// The output stream depends only on the seed, so results are bit-identical
/// across platforms and compilers. Doubles are produced from the top 53 bits:
/// `next_double() == (next_u64() >> 11) * 2^-53`, which lies in [0, 1).
class Prng {
 public:
  explicit constexpr Prng(std::uint64_t seed = 0) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  constexpr double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_double();
  }

  // Independent generator for sub-stream `stream`; does not advance *this.
  constexpr Prng derive(std::uint64_t stream) const noexcept {
    return Prng(mix(state_ ^ mix(stream + 0x9E3779B97F4A7C15ULL)));
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace meshgnn
