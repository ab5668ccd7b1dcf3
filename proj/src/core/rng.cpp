#include "scalebench/core/rng.hpp"

namespace scalebench {

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t seed, std::uint64_t index) {
  return RngStream(mix_seed(mix_seed(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1)));
}

}  // namespace scalebench
