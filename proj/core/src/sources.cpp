#include "cqz/sources.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "cqz/error.hpp"
#include "cqz/splitmix64.hpp"

namespace cqz {

namespace {

constexpr double kInt16Scale = 32768.0;

std::uint32_t read_u32le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void append_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void append_u16le(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

double laplacian_quantile(double u, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterOutOfRange("sigma must be positive and finite");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw ParameterOutOfRange("u must lie in the open interval (0, 1)");
  }
  const double scale = sigma / std::sqrt(2.0);
  const double t = u - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(t));
  return t < 0.0 ? -magnitude : magnitude;
}

SignalBuffer laplacian_source(std::uint64_t seed, std::int64_t count,
                              double sigma) {
  if (count < 0) {
    throw ParameterOutOfRange("count must be non-negative");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterOutOfRange("sigma must be positive and finite");
  }
  SplitMix64 rng(seed);
  SignalBuffer out;
  out.sample_rate = 0;
  out.samples.resize(static_cast<std::size_t>(count));
  for (auto& x : out.samples) {
    x = laplacian_quantile(rng.next_unit_open(), sigma);
  }
  return out;
}

SignalBuffer load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoFailure("cannot open file: " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoFailure("failed to read file: " + path.string());
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedHeader("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t chunk_size = read_u32le(chunk + 4);
    if (pos + 8 + chunk_size > bytes.size()) {
      throw MalformedHeader("truncated chunk in " + path.string());
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw MalformedHeader("fmt chunk too small in " + path.string());
      }
      audio_format = read_u16le(chunk + 8);
      channels = read_u16le(chunk + 10);
      sample_rate = read_u32le(chunk + 12);
      bits_per_sample = read_u16le(chunk + 22);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw MalformedHeader("missing fmt or data chunk in " + path.string());
  }
  if (audio_format != 1) {
    throw UnsupportedFormat("only integer PCM WAV is supported (format " +
                            std::to_string(audio_format) + ")");
  }
  if (bits_per_sample != 16) {
    throw UnsupportedFormat("only 16-bit PCM WAV is supported (" +
                            std::to_string(bits_per_sample) + "-bit)");
  }
  if (channels < 1) {
    throw MalformedHeader("channel count is zero in " + path.string());
  }
  const std::uint32_t frame_bytes = static_cast<std::uint32_t>(channels) * 2u;
  if (data_size % frame_bytes != 0) {
    throw MalformedHeader("data chunk is not a whole number of frames in " +
                          path.string());
  }

  const std::uint32_t frames = data_size / frame_bytes;
  SignalBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(frames);
  for (std::uint32_t i = 0; i < frames; ++i) {
    const auto raw = static_cast<std::int16_t>(
        read_u16le(data + static_cast<std::size_t>(i) * frame_bytes));
    out.samples[i] = raw / kInt16Scale;
  }
  return out;
}

void save_wav(const SignalBuffer& signal, const std::filesystem::path& path) {
  if (signal.sample_rate <= 0) {
    throw MissingSampleRate("signal has no sample rate; cannot write WAV");
  }
  const auto frames = static_cast<std::uint32_t>(signal.samples.size());
  const std::uint32_t data_size = frames * 2u;

  std::vector<std::uint8_t> bytes;
  bytes.reserve(44 + data_size);
  bytes.insert(bytes.end(), {'R', 'I', 'F', 'F'});
  append_u32le(bytes, 36 + data_size);
  bytes.insert(bytes.end(), {'W', 'A', 'V', 'E'});
  bytes.insert(bytes.end(), {'f', 'm', 't', ' '});
  append_u32le(bytes, 16);
  append_u16le(bytes, 1);  // integer PCM
  append_u16le(bytes, 1);  // mono
  append_u32le(bytes, static_cast<std::uint32_t>(signal.sample_rate));
  append_u32le(bytes, static_cast<std::uint32_t>(signal.sample_rate) * 2u);
  append_u16le(bytes, 2);   // block align
  append_u16le(bytes, 16);  // bits per sample
  bytes.insert(bytes.end(), {'d', 'a', 't', 'a'});
  append_u32le(bytes, data_size);

  const double upper = 1.0 - 1.0 / kInt16Scale;
  for (double x : signal.samples) {
    const double clamped = std::clamp(x, -1.0, upper);
    const auto value =
        static_cast<std::int16_t>(std::lround(clamped * kInt16Scale));
    append_u16le(bytes, static_cast<std::uint16_t>(value));
  }

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

}  // namespace cqz
