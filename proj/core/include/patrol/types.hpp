#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace patrol {

using VertexId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Global comparison tolerance for edge lengths, latencies and periods.
inline constexpr double kEps = 1e-9;

inline bool approx_le(double a, double b, double eps = kEps) {
  return a <= b + eps * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool approx_eq(double a, double b, double eps = kEps) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= eps * std::max({1.0, std::fabs(a), std::fabs(b)});
}

inline bool is_integral_value(double x, double eps = kEps) {
  if (!std::isfinite(x)) return false;
  return std::fabs(x - std::llround(x)) <= eps * std::max(1.0, std::fabs(x));
}

// Deterministic RNG with explicit distributions. std::uniform_*_distribution
// is implementation-defined, which would break byte-identical outputs across
// standard libraries, so the mapping from raw bits is done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

 private:
  std::uint64_t state_;
};

}  // namespace patrol
