#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace cqz {

// The six-component secret driving keystream generation: three control
// parameters and three initial conditions of the chaotic map.
struct ChaoticKey {
  double alpha = 0.0;  // control parameters, each strictly inside (0.5, 4)
  double beta = 0.0;
  double gamma = 0.0;
  double x0 = 0.0;  // initial conditions, each in [0, 1]
  double y0 = 0.0;
  double z0 = 0.0;
};

struct ChaoticState {
  double x = 0.0;  // each component stays in [0, 1)
  double y = 0.0;
  double z = 0.0;
};

struct Keystream {
  std::vector<std::uint32_t> words;  // each word < 2^word_bits
  int word_bits = 0;
};

// Returns the key unchanged if every invariant holds; otherwise throws
// ParameterOutOfRange naming the offending field.
ChaoticKey validate_key(const ChaoticKey& key);

// One step of the three-dimensional chaotic map:
//
//   x' = frac(alpha * (x - x^2) / (y - y^2))
//   y' = frac(beta  * (y - y^2) / (z - z^2))
//   z' = frac(gamma * (z - z^2) / (x - x^2))
//
// frac(r) = r - floor(r). A denominator with magnitude below 1e-12 is
// replaced by +-1e-12 (sign preserved, +1e-12 for zero) so the step is total.
// Arithmetic is IEEE-754 binary64 in exactly this operation order; the
// sequence of states is a format contract shared by encoder and decoder.
ChaoticState iterate_map(const ChaoticState& state, const ChaoticKey& key);

// Streaming word source. Construction validates the key, seeds the orbit at
// (x0, y0, z0) and discards a burn-in of 1000 iterations; each next_word()
// then advances the orbit once and extracts word_bits bits from the x
// component at scale 2^-32: w = floor(x * 2^32) mod 2^word_bits.
//
// After every iteration, a component that fell below 1e-10 is reset to
// 0.123456789; near-zero states are fixed points of the map numerators and
// would otherwise freeze the orbit.
class KeystreamGenerator {
 public:
  // word_bits must be in [1, 24].
  KeystreamGenerator(const ChaoticKey& key, int word_bits);

  std::uint32_t next_word();

  // Discards count words.
  void skip(std::int64_t count);

  int word_bits() const { return word_bits_; }

 private:
  void advance();

  ChaoticKey key_;
  ChaoticState state_;
  int word_bits_;
  std::uint32_t mask_;
};

// count words from a fresh generator. Pure: identical arguments always
// produce identical words.
Keystream generate_keystream(const ChaoticKey& key, std::int64_t count,
                             int word_bits);

// Size of the key space in bits when each of num_components secret values is
// resolvable to the given precision: log2((1/precision)^num_components).
double key_space_bits(double precision, int num_components);

// Derives a valid key from a 64-bit seed via SplitMix64. Control parameters
// land in [0.6, 3.9] and initial conditions in [0.05, 0.95]; the margins keep
// derived keys away from the boundary pathologies of the map.
ChaoticKey key_from_seed(std::uint64_t seed);

// Key file format: six decimal lines in order alpha, beta, gamma, x0, y0, z0.
// Lines starting with '#' are comments and skipped.
ChaoticKey load_key_file(const std::filesystem::path& path);
void save_key_file(const ChaoticKey& key, const std::filesystem::path& path);

}  // namespace cqz
