#pragma once

// Small statistics helpers shared by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace cqz::test {

// 0.999-quantile critical values of the chi-square distribution.
inline constexpr double kChiSquareCrit255Dof = 330.5197;  // 256 bins
inline constexpr double kChiSquareCrit63Dof = 103.4424;   // 64 bins

// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(std::span<const std::uint64_t> counts,
                                 double total) {
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    s += x;
  }
  return s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) {
    s += (x - m) * (x - m);
  }
  return s / static_cast<double>(v.size());
}

// Kurtosis E[(x-m)^4] / Var^2 (6 for a Laplacian distribution).
inline double kurtosis(std::span<const double> v) {
  const double m = mean(v);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(v.size());
  m4 /= static_cast<double>(v.size());
  return m4 / (m2 * m2);
}

inline double pearson_correlation(std::span<const double> a,
                                  std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("correlation needs equal nonempty spans");
  }
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace cqz::test
