#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cqz/signal.hpp"

namespace cqz {

// Midrise uniform quantizer over the support [-xmax, xmax]:
// Q = 2^bits cells of step 2*xmax/Q, reconstruction at cell centers.
struct UniformQuantizerSpec {
  int bits = 8;       // b >= 1
  double xmax = 1.0;  // support half-width, > 0

  int level_count() const { return 1 << bits; }
  double step() const { return 2.0 * xmax / level_count(); }
};

// Cell index in [0, 2^bits) for a finite input; inputs beyond the support
// clamp to the edge cells (overload).
int quantize_index(double x, const UniformQuantizerSpec& spec);

// Reconstruction level of a cell: -xmax + (index + 0.5) * step.
double reconstruct(int index, const UniformQuantizerSpec& spec);

// reconstruct(quantize_index(x)).
double quantize_reconstruct(double x, const UniformQuantizerSpec& spec);

// mu-law companding quantizer: compressor, uniform quantizer of the same bit
// depth over the compressed domain, expander.
struct MuLawQuantizerSpec {
  int bits = 8;
  double xmax = 1.0;
  double mu = 255.0;  // companding constant, > 0
};

// F(x) = xmax * sgn(x) * ln(1 + mu*|x|/xmax) / ln(1 + mu). Inputs beyond the
// support are clamped to +-xmax first. Odd, strictly increasing, F(xmax)=xmax.
double mu_compress(double x, const MuLawQuantizerSpec& spec);

// Exact inverse of mu_compress on [-xmax, xmax].
double mu_expand(double y, const MuLawQuantizerSpec& spec);

// mu_expand(reconstruct(quantize_index(mu_compress(x)))).
double quantize_nonuniform(double x, const MuLawQuantizerSpec& spec);

// 10*log10(sum x_i^2 / sum (x_i - y_i)^2) in dB. Throws LengthMismatch,
// ZeroSignalPower, or DistortionZero when the ratio is not defined.
double sqnr_db(const SignalBuffer& original, const SignalBuffer& reconstructed);

// Sampled input -> output map of a quantizer, for characteristic plots.
struct CharacteristicTable {
  struct Row {
    double input;
    double output;
  };
  std::vector<Row> rows;  // inputs strictly increasing
};

// Evaluates the quantizer closure on an evenly spaced grid of `points`
// inputs covering [xmin, xmax_plot] inclusive.
CharacteristicTable characteristic(const std::function<double(double)>& quantizer,
                                   double xmin, double xmax_plot, int points);

// CSV with header "input,output", one row per grid point.
void write_characteristic_csv(const CharacteristicTable& table,
                              std::ostream& out);
void write_characteristic_csv(const CharacteristicTable& table,
                              const std::filesystem::path& path);

}  // namespace cqz
