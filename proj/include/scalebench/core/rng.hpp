#pragma once

#include <cstdint>
#include <random>

namespace scalebench {

/// Seeded random stream.
///
/// Engine: 64-bit Mersenne Twister (std::mt19937_64, period 2^19937-1).
/// Uniform samples take the top 53 bits of one engine draw, so they lie in
/// [0, 1). Gaussian samples come from std::normal_distribution (the
/// Marsaglia polar method in libstdc++), which caches every second variate;
/// the sequence is reproducible for a given seed and build but is not
/// promised to match other standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream for sub-task `index` of a run seeded with `seed`
  /// (splitmix64 mixing of the pair).
  [[nodiscard]] static RngStream derive(std::uint64_t seed, std::uint64_t index);

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal() { return normal_(engine_); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer; used for seed derivation.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace scalebench
