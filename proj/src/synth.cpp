// src/synth.cpp

// Copyright 2026  F0TK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "f0tk/synth.hpp"

#include <cmath>
#include <numbers>

#include "f0tk/errors.hpp"

namespace f0tk {

Waveform synth_harmonic(const F0Contour& f0_track, int n_harmonics, int sample_rate_hz,
                        double amp) {
  if (n_harmonics < 1) throw ParameterError("synth_harmonic: n_harmonics must be >= 1");
  if (sample_rate_hz <= 0) throw ParameterError("synth_harmonic: sample rate must be positive");
  const double nyquist = sample_rate_hz / 2.0;
  for (const auto& f : f0_track.frames) {
    if (f.voiced && f.f0_hz * n_harmonics >= nyquist) {
      throw ParameterError("synth_harmonic: harmonic above Nyquist (f0 " +
                           std::to_string(f.f0_hz) + " Hz x " + std::to_string(n_harmonics) + ")");
    }
  }

  const long span_frames = f0_track.frames.empty() ? 0 : f0_track.frames.back().frame_index + 1;
  const double span_s = f0_track.offset_s + span_frames * f0_track.hop_s;
  const long n_samples = std::lround(span_s * sample_rate_hz);
  Waveform w;
  w.sample_rate_hz = sample_rate_hz;
  w.samples = Vector::Zero(n_samples);

  // Running phase per harmonic keeps the waveform continuous across frames
  // with changing f0. Phase is frozen through unvoiced stretches.
  std::vector<double> phase(static_cast<size_t>(n_harmonics), 0.0);
  const double two_pi = 2.0 * std::numbers::pi;

  for (const auto& f : f0_track.frames) {
    const double t0 = f0_track.offset_s + f.frame_index * f0_track.hop_s;
    const long s0 = std::lround(t0 * sample_rate_hz);
    const long s1 = std::min<long>(
        n_samples, std::lround((t0 + f0_track.hop_s) * sample_rate_hz));
    if (!f.voiced || f.f0_hz <= 0.0) continue;
    for (long n = s0; n < s1; ++n) {
      double v = 0.0;
      for (int k = 0; k < n_harmonics; ++k) {
        v += std::cos(phase[k]);
        phase[k] += two_pi * (k + 1) * f.f0_hz / sample_rate_hz;
        if (phase[k] > two_pi * 1024) phase[k] = std::fmod(phase[k], two_pi);
      }
      w.samples[n] = amp * v;
    }
  }
  return w;
}

}  // namespace f0tk
