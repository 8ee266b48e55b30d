#pragma once

#include <cstdint>
#include <filesystem>

#include "cqz/signal.hpp"

namespace cqz {

// Laplace quantile function for a zero-mean distribution with standard
// deviation sigma (scale b = sigma/sqrt(2)):
//   x = -b * sgn(u - 0.5) * ln(1 - 2|u - 0.5|),  u in (0, 1).
double laplacian_quantile(double u, double sigma);

// count i.i.d. Laplacian samples, mean 0, standard deviation sigma, drawn by
// inverse-CDF from a SplitMix64 stream. Deterministic per seed.
SignalBuffer laplacian_source(std::uint64_t seed, std::int64_t count,
                              double sigma);

// Reads a RIFF/WAVE file containing 16-bit integer PCM. Multichannel input
// keeps channel 0 only. Samples are scaled by 1/32768 into [-1, 1).
SignalBuffer load_wav(const std::filesystem::path& path);

// Writes mono 16-bit PCM. Samples are clamped to [-1, 1 - 2^-15], scaled by
// 32768 and rounded to nearest. Requires signal.sample_rate > 0.
void save_wav(const SignalBuffer& signal, const std::filesystem::path& path);

}  // namespace cqz
