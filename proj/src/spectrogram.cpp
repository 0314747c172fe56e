// src/spectrogram.cpp

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

#include "f0tk/spectrogram.hpp"

#include <fstream>

#include "f0tk/binary_io.hpp"
#include "f0tk/errors.hpp"
#include "f0tk/fft.hpp"

namespace f0tk {

Spectrogram spectrogram(const Waveform& w, const FramingConfig& cfg, FeatureKind kind) {
  const int frame_len = frame_length_samples(cfg, w.sample_rate_hz);
  if (cfg.fft_size < frame_len) {
    throw ParameterError("spectrogram: fft_size smaller than the frame length");
  }
  const FrameSet framed = frame_signal(w, cfg);
  const Vector window = make_window(cfg.window, frame_len);
  const double window_energy = window.squaredNorm();
  const long n_bins = cfg.fft_size / 2 + 1;

  Spectrogram spec;
  spec.kind = kind;
  spec.bin_hz = static_cast<double>(w.sample_rate_hz) / cfg.fft_size;
  spec.hop_s = cfg.hop_s;
  spec.offset_s = framed.offset_s;
  spec.sample_rate_hz = w.sample_rate_hz;
  spec.trim_warning = framed.trim_warning;
  spec.frames.resize(framed.frames.rows(), n_bins);

  for (long i = 0; i < framed.frames.rows(); ++i) {
    const Vector windowed = framed.frames.row(i).transpose().cwiseProduct(window);
    Vector mag = fft_magnitude(windowed, cfg.fft_size);
    switch (kind) {
      case FeatureKind::magnitude:
        spec.frames.row(i) = mag;
        break;
      case FeatureKind::psd:
        spec.frames.row(i) = mag.array().square() / (w.sample_rate_hz * window_energy);
        break;
      case FeatureKind::log_psd:
        spec.frames.row(i) =
            10.0 *
            (mag.array().square() / (w.sample_rate_hz * window_energy) + kLogPsdFloor).log10();
        break;
    }
  }
  return spec;
}

void dump_spectrogram(const Spectrogram& spec, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot create spectrogram dump: " + path);
  os.write("F0SP", 4);
  write_u32(os, static_cast<uint32_t>(spec.n_frames()));
  write_u32(os, static_cast<uint32_t>(spec.n_bins()));
  write_u32(os, static_cast<uint32_t>(spec.kind));
  for (long i = 0; i < spec.n_frames(); ++i) {
    for (long k = 0; k < spec.n_bins(); ++k) {
      write_f32(os, static_cast<float>(spec.frames(i, k)));
    }
  }
  if (!os) throw FormatError("short write: " + path);
}

}  // namespace f0tk
