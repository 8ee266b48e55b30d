#pragma once

// Deterministic speech-like test signal: glottal pulse trains shaped by two
// formant resonators, syllable envelopes and pauses, plus one fricative
// burst. Not real speech, but it has the sparse, bursty amplitude statistics
// speech coding cares about and exercises the WAV path end to end.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cqz/signal.hpp"
#include "cqz/splitmix64.hpp"

namespace cqz::test {

namespace detail {

// Two-pole resonator y[n] = in + 2 r cos(w) y[n-1] - r^2 y[n-2].
class Resonator {
 public:
  Resonator(double frequency_hz, double bandwidth_hz, int sample_rate) {
    const double r = std::exp(-M_PI * bandwidth_hz / sample_rate);
    a1_ = 2.0 * r * std::cos(2.0 * M_PI * frequency_hz / sample_rate);
    a2_ = -r * r;
    gain_ = 1.0 - r;
  }
  double process(double in) {
    const double out = gain_ * in + a1_ * y1_ + a2_ * y2_;
    y2_ = y1_;
    y1_ = out;
    return out;
  }

 private:
  double a1_, a2_, gain_;
  double y1_ = 0.0, y2_ = 0.0;
};

}  // namespace detail

inline SignalBuffer synth_speech(int sample_rate = 16000,
                                 double seconds = 2.0,
                                 std::uint64_t seed = 42) {
  struct Segment {
    bool voiced;
    double f0;       // pitch, Hz (voiced)
    double formant1;
    double formant2;
    double duration; // seconds
    double level;
  };
  // Rough "a - i - s - u - a" utterance with pauses.
  const Segment script[] = {
      {true, 120.0, 700.0, 1220.0, 0.22, 0.9},   // a
      {false, 0.0, 0.0, 0.0, 0.06, 0.0},         // pause
      {true, 135.0, 300.0, 2300.0, 0.18, 0.7},   // i
      {false, 0.0, 0.0, 0.0, 0.05, 0.0},
      {false, 0.0, 4500.0, 6000.0, 0.09, 0.25},  // s (noise burst)
      {true, 110.0, 350.0, 800.0, 0.20, 0.8},    // u
      {false, 0.0, 0.0, 0.0, 0.08, 0.0},
      {true, 100.0, 700.0, 1220.0, 0.26, 1.0},   // a
  };

  SplitMix64 rng(seed);
  SignalBuffer out;
  out.sample_rate = sample_rate;
  const auto total = static_cast<std::size_t>(seconds * sample_rate);
  out.samples.reserve(total);

  for (const Segment& seg : script) {
    if (out.samples.size() >= total) {
      break;
    }
    const auto n = static_cast<std::size_t>(seg.duration * sample_rate);
    if (seg.level == 0.0) {
      out.samples.insert(out.samples.end(), n, 0.0);
      continue;
    }
    detail::Resonator f1(seg.formant1, 90.0, sample_rate);
    detail::Resonator f2(seg.formant2, 120.0, sample_rate);
    double phase = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double excitation;
      if (seg.voiced) {
        phase += seg.f0 / sample_rate;
        if (phase >= 1.0) {
          phase -= 1.0;
          excitation = 1.0;
        } else {
          excitation = 0.02 * (rng.next_unit_open() - 0.5);
        }
      } else {
        excitation = rng.next_unit_open() - 0.5;
      }
      const double t = static_cast<double>(i) / n;
      const double envelope = std::sin(M_PI * t);  // attack and release
      const double s = f1.process(excitation) + 0.6 * f2.process(excitation);
      out.samples.push_back(seg.level * envelope * s);
    }
  }
  out.samples.resize(total, 0.0);

  // Normalize the peak to 0.5 so the fixture is comfortably in range.
  double peak = 0.0;
  for (double x : out.samples) {
    peak = std::max(peak, std::fabs(x));
  }
  if (peak > 0.0) {
    for (double& x : out.samples) {
      x *= 0.5 / peak;
    }
  }
  return out;
}

}  // namespace cqz::test
