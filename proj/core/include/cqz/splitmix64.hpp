#pragma once

#include <cstdint>

namespace cqz {

// SplitMix64 generator. The algorithm is fixed (not delegated to a library)
// so that seeded sample streams reproduce bit-exactly across builds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in the open interval (0, 1). The offset by half an ulp of
  // the 53-bit grid keeps the result away from 0, 0.5 and 1 exactly.
  double next_unit_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace cqz
