#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cqz/keystream.hpp"
#include "cqz/quantizers.hpp"
#include "cqz/signal.hpp"

namespace cqz {

// Three-stage pipeline configuration: fine stage Q1 = 2^q1_bits levels,
// coarse transmitted stage Q2 = 2^q2_bits levels, both midrise over
// [-xmax, xmax]. q2_bits == q1_bits makes the second stage lossless.
struct CodecConfig {
  int q1_bits = 12;  // 1 <= q2_bits <= q1_bits <= 16
  int q2_bits = 6;
  double xmax = 1.0;
};

// Parsed form of a .cqz stream: header fields plus the packed payload of
// q2_bits-wide codewords (MSB-first within bytes, final byte zero-padded).
struct EncodedStream {
  int q1_bits = 0;
  int q2_bits = 0;
  std::uint32_t sample_rate = 0;  // Hz, 0 when the source had no time base
  std::uint64_t num_samples = 0;
  double xmax = 0.0;
  std::vector<std::uint8_t> payload;

  bool operator==(const EncodedStream&) const = default;
};

// Element-wise XOR of index and keystream sequences of equal length. Every
// index and keystream word must fit in keystream.word_bits bits.
std::vector<std::uint32_t> encrypt_indices(
    const std::vector<std::uint32_t>& indices, const Keystream& keystream);

// Per sample: quantize on the fine Q1 grid, XOR the index with the next
// keystream word, reconstruct the encrypted index on the Q1 grid, requantize
// on the coarse Q2 grid, pack.
EncodedStream encode(const SignalBuffer& signal, const ChaoticKey& key,
                     const CodecConfig& config);

// Receiver: reconstruct each codeword on the Q2 grid, snap back to the Q1
// grid, XOR with the identical keystream, reconstruct on the Q1 grid. With
// q2_bits == q1_bits this inverts the encryption exactly and the round trip
// equals plain Q1 quantize-reconstruct.
SignalBuffer decode(const EncodedStream& stream, const ChaoticKey& key);

// The stage-3 input: encrypted Q1 reconstruction of each sample, before the
// coarse stage. Used for encrypted-domain SQNR measurement.
std::vector<double> encrypted_signal(const SignalBuffer& signal,
                                     const ChaoticKey& key,
                                     const CodecConfig& config);

// Transmit-side input->output map at a fixed keystream position: grid inputs
// are quantized on the Q1 grid, XORed with the keystream word at `position`,
// and reconstructed. Step abscissae match the Q1 uniform characteristic;
// output levels are permuted.
CharacteristicTable chaotic_characteristic(const ChaoticKey& key,
                                           const CodecConfig& config,
                                           std::int64_t position, double xmin,
                                           double xmax_plot, int points);

// .cqz serialization, little-endian:
//   magic "CQZ1" | version=1 | q1_bits | q2_bits | reserved=0 |
//   sample_rate u32 | num_samples u64 | xmax f64 | payload
std::vector<std::uint8_t> serialize(const EncodedStream& stream);
EncodedStream parse(std::span<const std::uint8_t> bytes);

void save_stream(const EncodedStream& stream,
                 const std::filesystem::path& path);
EncodedStream load_stream(const std::filesystem::path& path);

}  // namespace cqz
