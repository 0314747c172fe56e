// src/framing.cpp

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

#include "f0tk/framing.hpp"

#include <cmath>
#include <numbers>

#include "f0tk/errors.hpp"

namespace f0tk {

int frame_length_samples(const FramingConfig& cfg, int sample_rate_hz) {
  return static_cast<int>(std::lround(cfg.frame_len_s * sample_rate_hz));
}

int hop_samples(const FramingConfig& cfg, int sample_rate_hz) {
  return static_cast<int>(std::lround(cfg.hop_s * sample_rate_hz));
}

Vector make_window(WindowKind kind, int length) {
  Vector w(length);
  const double two_pi = 2.0 * std::numbers::pi;
  switch (kind) {
    case WindowKind::hann:
      for (int n = 0; n < length; ++n) w[n] = 0.5 - 0.5 * std::cos(two_pi * n / length);
      break;
    case WindowKind::hamming:
      for (int n = 0; n < length; ++n) w[n] = 0.54 - 0.46 * std::cos(two_pi * n / length);
      break;
    case WindowKind::rect:
      w.setOnes();
      break;
  }
  return w;
}

FrameSet frame_signal(const Waveform& w, const FramingConfig& cfg) {
  if (w.sample_rate_hz <= 0) throw ParameterError("frame_signal: sample rate must be positive");
  if (cfg.hop_s <= 0.0) throw ParameterError("frame_signal: hop must be positive");
  if (cfg.head_trim_frames < 0 || cfg.tail_trim_frames < 0) {
    throw ParameterError("frame_signal: trims must be non-negative");
  }
  const int frame_len = frame_length_samples(cfg, w.sample_rate_hz);
  const int hop = hop_samples(cfg, w.sample_rate_hz);
  if (frame_len <= 0 || hop <= 0) throw ParameterError("frame_signal: degenerate frame geometry");
  if (w.size() < frame_len) throw ParameterError("frame_signal: waveform shorter than one frame");

  const long total = (w.size() - frame_len) / hop + 1;
  FrameSet out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.offset_s = cfg.head_trim_frames * cfg.hop_s;

  const long kept = total - cfg.head_trim_frames - cfg.tail_trim_frames;
  if (kept <= 0) {
    out.frames.resize(0, frame_len);
    out.trim_warning = true;
    return out;
  }
  out.frames.resize(kept, frame_len);
  for (long i = 0; i < kept; ++i) {
    const long start = (i + cfg.head_trim_frames) * hop;
    out.frames.row(i) = w.samples.segment(start, frame_len);
  }
  return out;
}

}  // namespace f0tk
