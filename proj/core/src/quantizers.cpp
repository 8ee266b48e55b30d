#include "cqz/quantizers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "cqz/error.hpp"

namespace cqz {

namespace {

constexpr int kMaxBits = 24;

void check_uniform_spec(const UniformQuantizerSpec& spec) {
  if (spec.bits < 1 || spec.bits > kMaxBits) {
    throw ParameterOutOfRange("quantizer bits must lie in [1, 24]");
  }
  if (!(spec.xmax > 0.0) || !std::isfinite(spec.xmax)) {
    throw ParameterOutOfRange("quantizer xmax must be positive and finite");
  }
}

void check_mu_spec(const MuLawQuantizerSpec& spec) {
  check_uniform_spec(UniformQuantizerSpec{spec.bits, spec.xmax});
  if (!(spec.mu > 0.0) || !std::isfinite(spec.mu)) {
    throw ParameterOutOfRange("mu must be positive and finite");
  }
}

}  // namespace

int quantize_index(double x, const UniformQuantizerSpec& spec) {
  check_uniform_spec(spec);
  if (!std::isfinite(x)) {
    throw NonFiniteInput("quantizer input must be finite");
  }
  const double cell = std::floor((x + spec.xmax) / spec.step());
  if (cell < 0.0) {
    return 0;
  }
  const int last = spec.level_count() - 1;
  if (cell > static_cast<double>(last)) {
    return last;
  }
  return static_cast<int>(cell);
}

double reconstruct(int index, const UniformQuantizerSpec& spec) {
  check_uniform_spec(spec);
  if (index < 0 || index >= spec.level_count()) {
    throw IndexOutOfRange("quantizer index " + std::to_string(index) +
                          " not in [0, " + std::to_string(spec.level_count()) +
                          ")");
  }
  return -spec.xmax + (index + 0.5) * spec.step();
}

double quantize_reconstruct(double x, const UniformQuantizerSpec& spec) {
  return reconstruct(quantize_index(x, spec), spec);
}

double mu_compress(double x, const MuLawQuantizerSpec& spec) {
  check_mu_spec(spec);
  const double ax = std::min(std::fabs(x), spec.xmax);
  const double m =
      spec.xmax * std::log1p(spec.mu * ax / spec.xmax) / std::log1p(spec.mu);
  return std::copysign(m, x);
}

double mu_expand(double y, const MuLawQuantizerSpec& spec) {
  check_mu_spec(spec);
  const double ay = std::min(std::fabs(y), spec.xmax);
  const double m =
      spec.xmax * std::expm1(ay / spec.xmax * std::log1p(spec.mu)) / spec.mu;
  return std::copysign(m, y);
}

double quantize_nonuniform(double x, const MuLawQuantizerSpec& spec) {
  check_mu_spec(spec);
  if (!std::isfinite(x)) {
    throw NonFiniteInput("quantizer input must be finite");
  }
  const UniformQuantizerSpec uniform_part{spec.bits, spec.xmax};
  const double compressed = mu_compress(x, spec);
  const double level = quantize_reconstruct(compressed, uniform_part);
  return mu_expand(level, spec);
}

double sqnr_db(const SignalBuffer& original,
               const SignalBuffer& reconstructed) {
  if (original.samples.size() != reconstructed.samples.size()) {
    throw LengthMismatch("signal lengths differ: " +
                         std::to_string(original.samples.size()) + " vs " +
                         std::to_string(reconstructed.samples.size()));
  }
  double power = 0.0;
  double distortion = 0.0;
  for (std::size_t i = 0; i < original.samples.size(); ++i) {
    const double x = original.samples[i];
    const double e = x - reconstructed.samples[i];
    power += x * x;
    distortion += e * e;
  }
  if (power == 0.0) {
    throw ZeroSignalPower("original signal has zero power");
  }
  if (distortion == 0.0) {
    throw DistortionZero("signals are identical; SQNR is unbounded");
  }
  return 10.0 * std::log10(power / distortion);
}

CharacteristicTable characteristic(
    const std::function<double(double)>& quantizer, double xmin,
    double xmax_plot, int points) {
  if (!std::isfinite(xmin) || !std::isfinite(xmax_plot) || xmin >= xmax_plot) {
    throw ParameterOutOfRange("characteristic grid requires xmin < xmax_plot");
  }
  if (points < 2) {
    throw ParameterOutOfRange("characteristic grid needs at least 2 points");
  }
  CharacteristicTable table;
  table.rows.reserve(static_cast<std::size_t>(points));
  const double span = xmax_plot - xmin;
  for (int i = 0; i < points; ++i) {
    const double x = xmin + span * i / (points - 1);
    table.rows.push_back({x, quantizer(x)});
  }
  return table;
}

void write_characteristic_csv(const CharacteristicTable& table,
                              std::ostream& out) {
  out << "input,output\n";
  char buf[80];
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", row.input, row.output);
    out << buf;
  }
}

void write_characteristic_csv(const CharacteristicTable& table,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoFailure("cannot create file: " + path.string());
  }
  write_characteristic_csv(table, out);
  if (!out.flush()) {
    throw IoFailure("failed to write file: " + path.string());
  }
}

}  // namespace cqz
