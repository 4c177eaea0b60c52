#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "chigraph/vec3.hpp"

namespace chigraph {

// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on 64-bit words.
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Per-sample seed: mix64(mix64(master ^ kSeedSalt) + (index + 1) * kGoldenGamma).
// For a fixed master seed this is injective in the index (odd multiplier,
// bijective finalizer).
inline constexpr std::uint64_t kSeedSalt = 0x6368696772617068ULL;  // "chigraph"

constexpr std::uint64_t derive_sample_seed(std::uint64_t master_seed,
                                           std::uint64_t sample_index) noexcept {
  return mix64(mix64(master_seed ^ kSeedSalt) + (sample_index + 1) * kGoldenGamma);
}

// Deterministic counter-based stream: the i-th output is
// mix64(seed + (i + 1) * kGoldenGamma). Identical on every platform; no
// dependence on <random> distribution implementations.
class SampleRng {
 public:
  explicit constexpr SampleRng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // 53-bit uniform in [0, 1).
  constexpr double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t next_below(std::uint64_t bound);

  std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

// Uniform real in [a, b). Throws InvalidArgumentError if a >= b.
double uniform_real(SampleRng& rng, double a, double b);

// k distinct integers from [lo, hi], uniform over k-subsets, in draw order
// (partial Fisher-Yates over the interval). Throws InfeasibleSamplingError
// if k > hi - lo + 1.
std::vector<std::int64_t> uniform_subset(SampleRng& rng, std::int64_t lo, std::int64_t hi,
                                         std::int64_t k);

// Fisher-Yates shuffle of (0, 1, 2); each permutation has probability 1/6.
std::array<int, 3> uniform_permutation3(SampleRng& rng);

bool fair_coin(SampleRng& rng);

// Haar-uniform rotation from a uniform unit quaternion (Shoemake 1992):
//   q = (sqrt(1-u1) sin 2πu2, sqrt(1-u1) cos 2πu2, sqrt(u1) sin 2πu3, sqrt(u1) cos 2πu3)
// with u1, u2, u3 ~ U[0, 1) drawn in that order.
Mat3 random_rotation(SampleRng& rng);

}  // namespace chigraph
