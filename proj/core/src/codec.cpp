#include "cqz/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "cqz/bitpack.hpp"
#include "cqz/error.hpp"

namespace cqz {

namespace {

constexpr std::uint8_t kMagic[4] = {0x43, 0x51, 0x5A, 0x31};  // "CQZ1"
constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeaderSize = 28;
constexpr int kMaxCodecBits = 16;

void check_config(const CodecConfig& config) {
  if (config.q1_bits < 1 || config.q1_bits > kMaxCodecBits) {
    throw ParameterOutOfRange("q1_bits must lie in [1, 16]");
  }
  if (config.q2_bits < 1 || config.q2_bits > config.q1_bits) {
    throw ParameterOutOfRange("q2_bits must lie in [1, q1_bits]");
  }
  if (!(config.xmax > 0.0) || !std::isfinite(config.xmax)) {
    throw ParameterOutOfRange("xmax must be positive and finite");
  }
}

std::uint64_t payload_bytes_for(std::uint64_t num_samples, int q2_bits) {
  if (num_samples >
      (std::numeric_limits<std::uint64_t>::max() - 7) /
          static_cast<std::uint64_t>(q2_bits)) {
    throw MalformedStream("sample count overflows payload size");
  }
  return (num_samples * static_cast<std::uint64_t>(q2_bits) + 7) / 8;
}

void check_stream(const EncodedStream& stream) {
  if (stream.q1_bits < 1 || stream.q1_bits > kMaxCodecBits ||
      stream.q2_bits < 1 || stream.q2_bits > stream.q1_bits) {
    throw MalformedStream("stream bit depths out of range");
  }
  if (!(stream.xmax > 0.0) || !std::isfinite(stream.xmax)) {
    throw MalformedStream("stream xmax must be positive and finite");
  }
  if (stream.payload.size() !=
      payload_bytes_for(stream.num_samples, stream.q2_bits)) {
    throw MalformedStream("payload length does not match sample count");
  }
}

double encrypt_sample(double x, std::uint32_t word,
                      const UniformQuantizerSpec& q1) {
  const auto index = static_cast<std::uint32_t>(quantize_index(x, q1));
  return reconstruct(static_cast<int>(index ^ word), q1);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | b[at + static_cast<std::size_t>(i)];
  }
  return v;
}

std::uint64_t get_u64(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | b[at + static_cast<std::size_t>(i)];
  }
  return v;
}

}  // namespace

std::vector<std::uint32_t> encrypt_indices(
    const std::vector<std::uint32_t>& indices, const Keystream& keystream) {
  if (keystream.word_bits < 1 || keystream.word_bits > 24) {
    throw ParameterOutOfRange("keystream word_bits must lie in [1, 24]");
  }
  if (indices.size() != keystream.words.size()) {
    throw LengthMismatch("index and keystream lengths differ: " +
                         std::to_string(indices.size()) + " vs " +
                         std::to_string(keystream.words.size()));
  }
  const std::uint32_t mask = (1u << keystream.word_bits) - 1u;
  std::vector<std::uint32_t> out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] > mask) {
      throw WordWidthMismatch("index " + std::to_string(indices[i]) +
                              " does not fit in " +
                              std::to_string(keystream.word_bits) + " bits");
    }
    if (keystream.words[i] > mask) {
      throw WordWidthMismatch("keystream word " +
                              std::to_string(keystream.words[i]) +
                              " does not fit in " +
                              std::to_string(keystream.word_bits) + " bits");
    }
    out[i] = indices[i] ^ keystream.words[i];
  }
  return out;
}

EncodedStream encode(const SignalBuffer& signal, const ChaoticKey& key,
                     const CodecConfig& config) {
  check_config(config);
  if (signal.sample_rate < 0) {
    throw ParameterOutOfRange("sample_rate must be non-negative");
  }
  for (double x : signal.samples) {
    if (!std::isfinite(x)) {
      throw NonFiniteInput("signal contains a non-finite sample");
    }
  }
  const UniformQuantizerSpec q1{config.q1_bits, config.xmax};
  const UniformQuantizerSpec q2{config.q2_bits, config.xmax};
  KeystreamGenerator gen(key, config.q1_bits);
  BitWriter writer;
  for (double x : signal.samples) {
    const double encrypted = encrypt_sample(x, gen.next_word(), q1);
    const int coarse = quantize_index(encrypted, q2);
    writer.write(static_cast<std::uint32_t>(coarse), config.q2_bits);
  }
  EncodedStream stream;
  stream.q1_bits = config.q1_bits;
  stream.q2_bits = config.q2_bits;
  stream.sample_rate = static_cast<std::uint32_t>(signal.sample_rate);
  stream.num_samples = signal.samples.size();
  stream.xmax = config.xmax;
  stream.payload = writer.take();
  return stream;
}

SignalBuffer decode(const EncodedStream& stream, const ChaoticKey& key) {
  check_stream(stream);
  const UniformQuantizerSpec q1{stream.q1_bits, stream.xmax};
  const UniformQuantizerSpec q2{stream.q2_bits, stream.xmax};
  KeystreamGenerator gen(key, stream.q1_bits);
  BitReader reader(stream.payload);
  SignalBuffer out;
  out.sample_rate = static_cast<int>(stream.sample_rate);
  out.samples.resize(static_cast<std::size_t>(stream.num_samples));
  for (auto& sample : out.samples) {
    const auto coarse = static_cast<int>(reader.read(stream.q2_bits));
    const double coarse_level = reconstruct(coarse, q2);
    const auto fine =
        static_cast<std::uint32_t>(quantize_index(coarse_level, q1));
    const std::uint32_t index = fine ^ gen.next_word();
    sample = reconstruct(static_cast<int>(index), q1);
  }
  return out;
}

std::vector<double> encrypted_signal(const SignalBuffer& signal,
                                     const ChaoticKey& key,
                                     const CodecConfig& config) {
  check_config(config);
  for (double x : signal.samples) {
    if (!std::isfinite(x)) {
      throw NonFiniteInput("signal contains a non-finite sample");
    }
  }
  const UniformQuantizerSpec q1{config.q1_bits, config.xmax};
  KeystreamGenerator gen(key, config.q1_bits);
  std::vector<double> out(signal.samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = encrypt_sample(signal.samples[i], gen.next_word(), q1);
  }
  return out;
}

CharacteristicTable chaotic_characteristic(const ChaoticKey& key,
                                           const CodecConfig& config,
                                           std::int64_t position, double xmin,
                                           double xmax_plot, int points) {
  check_config(config);
  if (position < 0) {
    throw ParameterOutOfRange("keystream position must be non-negative");
  }
  KeystreamGenerator gen(key, config.q1_bits);
  gen.skip(position);
  const std::uint32_t word = gen.next_word();
  const UniformQuantizerSpec q1{config.q1_bits, config.xmax};
  return characteristic(
      [&](double x) { return encrypt_sample(x, word, q1); }, xmin, xmax_plot,
      points);
}

std::vector<std::uint8_t> serialize(const EncodedStream& stream) {
  check_stream(stream);
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + stream.payload.size());
  for (std::uint8_t b : kMagic) {
    out.push_back(b);
  }
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(stream.q1_bits));
  out.push_back(static_cast<std::uint8_t>(stream.q2_bits));
  out.push_back(0);  // reserved
  put_u32(out, stream.sample_rate);
  put_u64(out, stream.num_samples);
  put_u64(out, std::bit_cast<std::uint64_t>(stream.xmax));
  out.insert(out.end(), stream.payload.begin(), stream.payload.end());
  return out;
}

EncodedStream parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw MalformedStream("stream shorter than header");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw MalformedStream("bad magic bytes");
  }
  if (bytes[4] != kVersion) {
    throw MalformedStream("unsupported version " + std::to_string(bytes[4]));
  }
  if (bytes[7] != 0) {
    throw MalformedStream("reserved byte must be zero");
  }
  EncodedStream stream;
  stream.q1_bits = bytes[5];
  stream.q2_bits = bytes[6];
  stream.sample_rate = get_u32(bytes, 8);
  stream.num_samples = get_u64(bytes, 12);
  stream.xmax = std::bit_cast<double>(get_u64(bytes, 20));
  stream.payload.assign(bytes.begin() + kHeaderSize, bytes.end());
  check_stream(stream);
  return stream;
}

void save_stream(const EncodedStream& stream,
                 const std::filesystem::path& path) {
  const auto bytes = serialize(stream);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoFailure("cannot create file: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out.flush()) {
    throw IoFailure("failed to write file: " + path.string());
  }
}

EncodedStream load_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("cannot open file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoFailure("failed to read file: " + path.string());
  }
  return parse(bytes);
}

}  // namespace cqz
