#include "chigraph/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "chigraph/errors.hpp"

namespace chigraph {
namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t SampleRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgumentError("next_below: bound must be positive");
  u128 product = static_cast<u128>(next_u64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(next_u64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double uniform_real(SampleRng& rng, double a, double b) {
  if (!(a < b)) {
    throw InvalidArgumentError("uniform_real: invalid range [" + std::to_string(a) + ", " +
                               std::to_string(b) + ")");
  }
  const double v = a + (b - a) * rng.next_unit();
  // Rounding in a + (b-a)u can land on b.
  return v < b ? v : std::nextafter(b, a);
}

std::vector<std::int64_t> uniform_subset(SampleRng& rng, std::int64_t lo, std::int64_t hi,
                                         std::int64_t k) {
  if (k < 0) throw InvalidArgumentError("uniform_subset: k must be non-negative");
  const std::int64_t width = hi < lo ? 0 : hi - lo + 1;
  if (k > width) {
    throw InfeasibleSamplingError("cannot draw " + std::to_string(k) +
                                  " distinct values from [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
  }
  std::vector<std::int64_t> pool(static_cast<std::size_t>(width));
  std::iota(pool.begin(), pool.end(), lo);
  for (std::int64_t i = 0; i < k; ++i) {
    const auto remaining = static_cast<std::uint64_t>(width - i);
    const auto j = static_cast<std::size_t>(i) + static_cast<std::size_t>(rng.next_below(remaining));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

std::array<int, 3> uniform_permutation3(SampleRng& rng) {
  std::array<int, 3> p{0, 1, 2};
  for (std::size_t i = 2; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

bool fair_coin(SampleRng& rng) { return (rng.next_u64() >> 63) != 0; }

Mat3 random_rotation(SampleRng& rng) {
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  const double u3 = rng.next_unit();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  double x = a * std::sin(two_pi * u2);
  double y = a * std::cos(two_pi * u2);
  double z = b * std::sin(two_pi * u3);
  double w = b * std::cos(two_pi * u3);
  const double n = std::sqrt(x * x + y * y + z * z + w * w);
  x /= n;
  y /= n;
  z /= n;
  w /= n;

  Mat3 r;
  r(0, 0) = 1.0 - 2.0 * (y * y + z * z);
  r(0, 1) = 2.0 * (x * y - z * w);
  r(0, 2) = 2.0 * (x * z + y * w);
  r(1, 0) = 2.0 * (x * y + z * w);
  r(1, 1) = 1.0 - 2.0 * (x * x + z * z);
  r(1, 2) = 2.0 * (y * z - x * w);
  r(2, 0) = 2.0 * (x * z - y * w);
  r(2, 1) = 2.0 * (y * z + x * w);
  r(2, 2) = 1.0 - 2.0 * (x * x + y * y);
  return r;
}

}  // namespace chigraph
