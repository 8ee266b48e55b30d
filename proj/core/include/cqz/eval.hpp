#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cqz/keystream.hpp"
#include "cqz/signal.hpp"

namespace cqz {

enum class QuantizerKind { uniform, nonuniform, chaotic };

const char* quantizer_name(QuantizerKind kind);

struct LaplacianSourceSpec {
  std::uint64_t seed = 1;
  std::int64_t count = 1000000;
  double sigma = 1.0;
};

struct WavSourceSpec {
  std::filesystem::path path;
};

using SourceSpec = std::variant<LaplacianSourceSpec, WavSourceSpec>;

// Support half-width policy for the sweep. four_sigma uses 4x the configured
// sigma for a Laplacian source and 4x the empirical RMS for a WAV source;
// peak uses the largest |sample| (1.0 when the buffer is silent or empty).
struct XmaxPolicy {
  enum class Kind { fixed, four_sigma, peak };
  Kind kind = Kind::four_sigma;
  double value = 0.0;  // used when kind == fixed

  static XmaxPolicy fixed(double v) { return {Kind::fixed, v}; }
  static XmaxPolicy four_sigma() { return {Kind::four_sigma, 0.0}; }
  static XmaxPolicy peak() { return {Kind::peak, 0.0}; }
};

struct SweepConfig {
  SourceSpec source;
  int bits_min = 2;  // inclusive range, within [1, 12]
  int bits_max = 8;
  std::vector<QuantizerKind> quantizers = {
      QuantizerKind::uniform, QuantizerKind::nonuniform, QuantizerKind::chaotic};
  int q1_bits = 12;  // chaotic fine stage; every swept b must be <= q1_bits
  ChaoticKey key;
  XmaxPolicy xmax_policy;
};

// One SQNR measurement. sqnr_encrypted_domain_db is present for the chaotic
// quantizer only: the SQNR between the stage-3 input (encrypted Q1
// reconstruction) and its Q2 reconstruction. It is absent when that stage is
// lossless (bits == q1_bits).
struct SweepRow {
  std::string source_label;
  QuantizerKind quantizer = QuantizerKind::uniform;
  int bits = 0;
  double sqnr_db = 0.0;
  std::optional<double> sqnr_encrypted_domain_db;
};

// Measures every (quantizer, bits) pair of the config on one shared source
// buffer. Rows are ordered by quantizer (uniform, nonuniform, chaotic), then
// bits ascending. Deterministic per config; pairs are measured in parallel.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// CSV with header source,quantizer,bits,sqnr_db,sqnr_encrypted_domain_db;
// the last field is empty where absent. Byte-identical for identical rows.
void export_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void export_csv(const std::vector<SweepRow>& rows,
                const std::filesystem::path& path);

// Plain-text comparison of the measured average chaotic-vs-baseline SQNR
// deltas against the reference gains for this design (+3.0/+1.0 dB for a
// Laplacian source, +2.5/+0.8 dB for speech). Informational; nothing is
// asserted.
std::string delta_report(const std::vector<SweepRow>& rows);

}  // namespace cqz
