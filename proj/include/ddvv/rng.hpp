#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ddvv {

/// Seeded random stream with platform-independent output.
///
/// std::normal_distribution is implementation-defined, so uniforms are built
/// from raw mt19937_64 words and normals via Box-Muller. Two runs with the
/// same seed produce the same stream on any conforming compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Per-trial derived seed; trial i draws from an independent stream.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return seed ^ trial;
}

}  // namespace ddvv
