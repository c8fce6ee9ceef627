#pragma once

#include <cstdint>

namespace rescalk {

// All randomness in the library flows through the splitmix64 generator and
// the derive_seed() mixer below. Both are fixed, platform-independent bit
// manipulations, so every run is reproducible from a single root seed.
// The scheme (also described in the README):
//
//   splitmix64: state += 0x9E3779B97F4A7C15; z = state;
//               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//               return z ^ (z >> 31);
//
//   derive_seed(parent, domain, index) =
//       mix64(parent ^ mix64(domain * GOLDEN + index + 1))
//
// where mix64 is the splitmix64 finalizer and GOLDEN = 0x9E3779B97F4A7C15.
// Each kind of child stream (solver restart, ensemble replica, per-k sweep,
// ...) uses a distinct SeedDomain so indices never collide across uses.

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

enum class SeedDomain : std::uint64_t {
  Restart = 1,       // best_of restart index
  Replica = 2,       // ensemble replica index
  Resample = 3,      // multiplicative-noise stream of one replica
  Solver = 4,        // solver seed of one replica
  Sweep = 5,         // per-k ensemble seed inside a selection sweep
  SynthFactors = 6,  // synthetic ground-truth factors
  SynthNoise = 7,    // synthetic additive noise
};

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, SeedDomain domain,
                                    std::uint64_t index) {
  const std::uint64_t tag =
      mix64(static_cast<std::uint64_t>(domain) * kGolden64 + index + 1);
  return mix64(parent ^ tag);
}

/// splitmix64 stream of doubles in the open interval (0,1).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += kGolden64);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in (0,1): 53 random bits centered away from both ends.
  double next() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform draw in (lo, hi).
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::uint64_t state_;
};

}  // namespace rescalk
