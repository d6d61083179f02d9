#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace hgb {

/// Derives an independent 64-bit seed for stream `stream` of `base` (splitmix64).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Portable random source.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard, and
/// implements its own distributions so that results do not depend on the
/// standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform in (0, 1); never returns 0, so log() is finite.
  double uniform_open();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);
  /// Standard normal (Box-Muller, no caching).
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  /// A new generator seeded from this one's seed stream.
  Rng fork(std::uint64_t stream) { return Rng(mix_seed(next(), stream)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hgb
