#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace sofic {

/// Counter-based 64-bit random stream.
///
/// The i-th output is a SplitMix64 finalizer applied to seed + i * golden, so a
/// stream is fully described by (seed, counter). Independent streams are made
/// with `split`, which derives a new seed from the parent seed and a stream id.
/// All derived quantities (uniform doubles, bounded integers, normals) are
/// computed here rather than through <random> distributions, whose output is
/// implementation defined.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept : seed_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Standard normal via Box-Muller (one value per call).
  double normal() noexcept;

  /// Independent child stream identified by `stream`.
  [[nodiscard]] Rng split(std::uint64_t stream) const noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Stateless mixing function used by `Rng`.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Fisher-Yates shuffle driven by `rng`.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace sofic
