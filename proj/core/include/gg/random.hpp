#pragma once

#include <cstdint>
#include <random>

namespace gg {

/// Seeded generator used everywhere randomness enters.
///
/// Workers never share an instance: every Monte Carlo sample gets its own
/// stream derived from (seed, stream id), so results do not depend on the
/// number of workers or on scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for sample `stream` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) built from the top 53 bits; identical on every
  /// platform (unlike std::uniform_real_distribution).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gg
