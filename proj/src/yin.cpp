// src/yin.cpp

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

#include "f0tk/yin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "f0tk/errors.hpp"
#include "f0tk/parallel.hpp"

namespace f0tk {

namespace {

void validate(const YinConfig& cfg, int sample_rate_hz) {
  if (!(cfg.f_min_hz > 0.0) || !(cfg.f_max_hz > cfg.f_min_hz) ||
      !(cfg.f_max_hz < sample_rate_hz / 2.0)) {
    throw ParameterError("yin: require 0 < f_min < f_max < Nyquist");
  }
  if (!(cfg.threshold > 0.0) || !(cfg.threshold < 1.0)) {
    throw ParameterError("yin: threshold must be in (0, 1)");
  }
}

struct FrameEstimate {
  double f0_hz = 0.0;
  bool voiced = false;
};

FrameEstimate estimate_frame(const Vector& x, long lag_min, long lag_max, double threshold,
                             double fs, double f_min, double f_max) {
  // Squared-difference function with a fixed comparison window, so every lag
  // is scored over the same number of samples.
  const long window = x.size() - lag_max;
  Vector d(lag_max + 1);
  d(0) = 0.0;
  for (long lag = 1; lag <= lag_max; ++lag) {
    d(lag) = (x.head(window) - x.segment(lag, window)).squaredNorm();
  }

  // Cumulative-mean normalization: d'(lag) = d(lag) * lag / sum_{1..lag} d.
  Vector cmnd(lag_max + 1);
  cmnd(0) = 1.0;
  double running = 0.0;
  for (long lag = 1; lag <= lag_max; ++lag) {
    running += d(lag);
    cmnd(lag) = running > 0.0 ? d(lag) * static_cast<double>(lag) / running : 1.0;
  }

  // First dip below threshold, ridden down to its local minimum; otherwise
  // the global minimum over the admissible range.
  long best = -1;
  for (long lag = lag_min; lag <= lag_max; ++lag) {
    if (cmnd(lag) < threshold) {
      while (lag + 1 <= lag_max && cmnd(lag + 1) < cmnd(lag)) ++lag;
      best = lag;
      break;
    }
  }
  if (best < 0) {
    best = lag_min;
    for (long lag = lag_min + 1; lag <= lag_max; ++lag) {
      if (cmnd(lag) < cmnd(best)) best = lag;
    }
  }

  FrameEstimate est;
  if (cmnd(best) > kYinUnvoicedCmnd) return est;  // unvoiced

  double period = static_cast<double>(best);
  if (best > 1 && best < lag_max) {
    const double a = cmnd(best - 1), b = cmnd(best), c = cmnd(best + 1);
    const double denom = a - 2.0 * b + c;
    if (std::abs(denom) > 1e-12) {
      period += std::clamp(0.5 * (a - c) / denom, -1.0, 1.0);
    }
  }
  est.f0_hz = std::clamp(fs / period, f_min, f_max);
  est.voiced = true;
  return est;
}

}  // namespace

F0Contour yin_track(const Waveform& w, const YinConfig& cfg, int jobs) {
  validate(cfg, w.sample_rate_hz);
  const double fs = w.sample_rate_hz;
  const long lag_min = static_cast<long>(std::ceil(fs / cfg.f_max_hz));
  const long lag_max = static_cast<long>(std::floor(fs / cfg.f_min_hz));
  const int frame_len = frame_length_samples(cfg.framing, w.sample_rate_hz);
  if (2 * lag_max > frame_len) {
    throw ParameterError("yin: " + std::to_string(frame_len) +
                         "-sample frame cannot cover two periods of " +
                         std::to_string(cfg.f_min_hz) + " Hz");
  }

  const FrameSet framed = frame_signal(w, cfg.framing);
  F0Contour c;
  c.hop_s = cfg.framing.hop_s;
  c.offset_s = framed.offset_s;
  c.frames.resize(framed.frames.rows());
  parallel_for(framed.frames.rows(), jobs, [&](long i) {
    const Vector x = framed.frames.row(i).transpose();
    const FrameEstimate est =
        estimate_frame(x, lag_min, lag_max, cfg.threshold, fs, cfg.f_min_hz, cfg.f_max_hz);
    c.frames[i] = {i, est.f0_hz, est.voiced};
  });
  return c;
}

}  // namespace f0tk
