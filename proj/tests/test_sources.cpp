#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <vector>

#include "cqz/error.hpp"
#include "cqz/sources.hpp"
#include "cqz/splitmix64.hpp"
#include "support/stats.hpp"

using namespace cqz;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "cqz_test_sources";
  std::filesystem::create_directories(dir);
  return dir;
}

void append_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) {
    v.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
  }
}

void append_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(static_cast<std::uint8_t>(x));
  v.push_back(static_cast<std::uint8_t>(x >> 8));
}

// Hand-built WAV so load_wav is tested against independent bytes.
std::filesystem::path write_wav_bytes(const std::string& name,
                                      std::uint16_t format,
                                      std::uint16_t channels,
                                      std::uint16_t bits_per_sample,
                                      const std::vector<std::int16_t>& frames,
                                      bool with_list_chunk = false) {
  std::vector<std::uint8_t> v;
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(frames.size()) * 2;
  v.insert(v.end(), {'R', 'I', 'F', 'F'});
  append_u32(v, 4 + 24 + (with_list_chunk ? 12 : 0) + 8 + data_size);
  v.insert(v.end(), {'W', 'A', 'V', 'E'});
  v.insert(v.end(), {'f', 'm', 't', ' '});
  append_u32(v, 16);
  append_u16(v, format);
  append_u16(v, channels);
  append_u32(v, 8000);
  append_u32(v, 8000u * channels * 2u);
  append_u16(v, static_cast<std::uint16_t>(channels * 2));
  append_u16(v, bits_per_sample);
  if (with_list_chunk) {
    v.insert(v.end(), {'L', 'I', 'S', 'T'});
    append_u32(v, 4);
    v.insert(v.end(), {'I', 'N', 'F', 'O'});
  }
  v.insert(v.end(), {'d', 'a', 't', 'a'});
  append_u32(v, data_size);
  for (std::int16_t s : frames) {
    append_u16(v, static_cast<std::uint16_t>(s));
  }
  const auto path = temp_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size()));
  return path;
}

}  // namespace

TEST_CASE("laplacian_quantile") {
  CHECK(laplacian_quantile(0.5, 1.0) == 0.0);
  // Quartiles sit at -+ b*ln(2).
  const double b = 1.0 / std::sqrt(2.0);
  CHECK(laplacian_quantile(0.75, 1.0) ==
        doctest::Approx(b * std::log(2.0)).epsilon(1e-12));
  CHECK(laplacian_quantile(0.25, 1.0) ==
        doctest::Approx(-b * std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(laplacian_quantile(0.0, 1.0), ParameterOutOfRange);
  CHECK_THROWS_AS(laplacian_quantile(1.0, 1.0), ParameterOutOfRange);
  CHECK_THROWS_AS(laplacian_quantile(0.5, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(laplacian_quantile(0.5, -1.0), ParameterOutOfRange);
}

TEST_CASE("laplacian_source determinism and edge cases") {
  const SignalBuffer a = laplacian_source(42, 5000, 1.0);
  const SignalBuffer b = laplacian_source(42, 5000, 1.0);
  CHECK(a.samples == b.samples);
  CHECK(a.sample_rate == 0);

  CHECK(laplacian_source(1, 0, 1.0).samples.empty());
  CHECK_THROWS_AS(laplacian_source(1, -1, 1.0), ParameterOutOfRange);
  CHECK_THROWS_AS(laplacian_source(1, 10, 0.0), ParameterOutOfRange);
}

TEST_CASE("laplacian_source moments at a million samples") {
  const SignalBuffer buf = laplacian_source(1, 1000000, 1.0);
  CHECK(std::fabs(test::mean(buf.samples)) < 0.005);
  CHECK(std::fabs(test::variance(buf.samples) - 1.0) < 0.01);
  // Laplacian kurtosis is 6 (excess 3).
  CHECK(std::fabs(test::kurtosis(buf.samples) - 6.0) < 0.3);

  const SignalBuffer scaled = laplacian_source(2, 1000000, 0.25);
  CHECK(std::fabs(test::variance(scaled.samples) - 0.0625) < 0.000625);
}

TEST_CASE("load_wav scales 16-bit PCM into [-1, 1)") {
  const auto path = write_wav_bytes("mono.wav", 1, 1, 16, {0, 16384, -32768});
  const SignalBuffer buf = load_wav(path);
  CHECK(buf.sample_rate == 8000);
  REQUIRE(buf.samples.size() == 3);
  CHECK(buf.samples[0] == 0.0);
  CHECK(buf.samples[1] == 0.5);
  CHECK(buf.samples[2] == -1.0);
}

TEST_CASE("load_wav keeps channel 0 of a stereo file") {
  // Interleaved L/R frames: L = {100, 200}, R = {-1, -2}.
  const auto path =
      write_wav_bytes("stereo.wav", 1, 2, 16, {100, -1, 200, -2});
  const SignalBuffer buf = load_wav(path);
  REQUIRE(buf.samples.size() == 2);
  CHECK(buf.samples[0] == 100.0 / 32768.0);
  CHECK(buf.samples[1] == 200.0 / 32768.0);
}

TEST_CASE("load_wav skips unrelated chunks") {
  const auto path =
      write_wav_bytes("chunked.wav", 1, 1, 16, {1234}, /*with_list=*/true);
  const SignalBuffer buf = load_wav(path);
  REQUIRE(buf.samples.size() == 1);
  CHECK(buf.samples[0] == 1234.0 / 32768.0);
}

TEST_CASE("load_wav format gates") {
  CHECK_THROWS_AS(load_wav(write_wav_bytes("f32.wav", 3, 1, 32, {0})),
                  UnsupportedFormat);
  CHECK_THROWS_AS(load_wav(write_wav_bytes("a8.wav", 1, 1, 8, {0})),
                  UnsupportedFormat);
  CHECK_THROWS_AS(load_wav(temp_dir() / "missing.wav"), IoFailure);

  const auto garbage = temp_dir() / "garbage.wav";
  std::ofstream(garbage, std::ios::binary) << "definitely not a wav";
  CHECK_THROWS_AS(load_wav(garbage), MalformedHeader);

  // Truncate a valid file inside the data chunk.
  const auto full = write_wav_bytes("full.wav", 1, 1, 16, {1, 2, 3, 4});
  std::ifstream in(full, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  bytes.resize(bytes.size() - 3);
  const auto truncated = temp_dir() / "truncated.wav";
  std::ofstream(truncated, std::ios::binary)
      .write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  CHECK_THROWS_AS(load_wav(truncated), MalformedHeader);
}

TEST_CASE("save_wav scaling, clamping, and rate guard") {
  const auto dir = temp_dir();
  SUBCASE("known samples produce known integers") {
    SignalBuffer buf;
    buf.sample_rate = 8000;
    buf.samples = {0.0, 0.5, -1.0, 1.5};
    const auto path = dir / "save.wav";
    save_wav(buf, path);
    const SignalBuffer loaded = load_wav(path);
    CHECK(loaded.samples[0] == 0.0);
    CHECK(loaded.samples[1] == 0.5);
    CHECK(loaded.samples[2] == -1.0);
    CHECK(loaded.samples[3] == 32767.0 / 32768.0);  // clamped
    CHECK(loaded.sample_rate == 8000);
  }
  SUBCASE("synthetic buffers cannot be written") {
    SignalBuffer buf;
    buf.samples = {0.1};
    CHECK_THROWS_AS(save_wav(buf, dir / "norate.wav"), MissingSampleRate);
  }
}

TEST_CASE("wav round trip stays within one 16-bit step") {
  SplitMix64 rng(11);
  SignalBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.resize(20000);
  for (auto& x : buf.samples) {
    x = 2.0 * rng.next_unit_open() - 1.0;  // in (-1, 1)
  }
  const auto path = temp_dir() / "roundtrip.wav";
  save_wav(buf, path);
  const SignalBuffer loaded = load_wav(path);
  REQUIRE(loaded.samples.size() == buf.samples.size());
  double max_err = 0.0;
  for (std::size_t i = 0; i < buf.samples.size(); ++i) {
    max_err = std::max(max_err, std::fabs(buf.samples[i] - loaded.samples[i]));
  }
  CHECK(max_err <= 1.0 / 32768.0);
}
