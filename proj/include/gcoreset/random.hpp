#pragma once

// Seeded randomness. Every random choice in the library flows from an
// explicit 64-bit seed through mt19937_64; child streams come from
// derive_seed so parallel work never shares an engine. The helpers here
// avoid <random> distributions, whose output differs between standard
// libraries.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gcoreset {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer over (seed, stream); distinct streams give
/// statistically independent child seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return derive_seed(derive_seed(seed, a), b);
}

/// Uniform in [0, 1) with 53 random bits.
double uniform01(Rng& rng) noexcept;

/// Uniform in [0, n), unbiased. n must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n) noexcept;

/// k distinct values from [0, n), uniformly, returned sorted.
std::vector<std::uint64_t> random_subset(Rng& rng, std::uint64_t n, std::size_t k);

/// Draws with replacement from a fixed nonnegative weight vector by
/// inverse-CDF lookup.
class DiscreteSampler {
 public:
  /// Throws std::invalid_argument if no weight is positive or any weight is
  /// negative or non-finite.
  explicit DiscreteSampler(std::span<const double> weights);

  std::size_t operator()(Rng& rng) const;
  [[nodiscard]] double total() const noexcept { return cumulative_.back(); }

 private:
  std::vector<double> cumulative_;
};

/// Weighted sampling without replacement (exponential-key method). Returns
/// min(count, #positive weights) distinct indices, in ascending order.
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::span<const double> weights, std::size_t count);

}  // namespace gcoreset
