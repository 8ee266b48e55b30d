#pragma once

// Independent oracle for the average distortion of a midrise uniform
// quantizer applied to a zero-mean Laplacian source: per-cell numerical
// integration of (x - m_i)^2 p(x) over the support plus analytic overload
// tails. Used only by tests; shares no code with the quantizer path.

namespace cqz::test {

// E[(x - q(x))^2] for a 2^bits-level midrise quantizer over [-xmax, xmax].
double laplacian_uniform_distortion(int bits, double xmax, double sigma);

// 10*log10(sigma^2 / distortion).
double laplacian_uniform_sqnr_db(int bits, double xmax, double sigma);

}  // namespace cqz::test
