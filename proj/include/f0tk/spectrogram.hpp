// include/f0tk/spectrogram.hpp

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

#ifndef F0TK_SPECTROGRAM_HPP_
#define F0TK_SPECTROGRAM_HPP_

#include <string>

#include "f0tk/framing.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

enum class FeatureKind { magnitude, psd, log_psd };

/// Keeps log_psd finite on silence.
constexpr double kLogPsdFloor = 1e-12;

/// Time-major short-time spectra: frame i in row i, K = fft_size/2 + 1 bins.
struct Spectrogram {
  Matrix frames;  // I x K
  FeatureKind kind = FeatureKind::log_psd;
  double bin_hz = 0.0;
  double hop_s = 0.005;
  double offset_s = 0.0;
  int sample_rate_hz = 0;
  bool trim_warning = false;

  long n_frames() const { return frames.rows(); }
  long n_bins() const { return frames.cols(); }
};

/// Window each frame, transform, and post-process per `kind`:
///   magnitude  |X(k)|
///   psd        |X(k)|^2 / (fs * sum w(n)^2)
///   log_psd    10 * log10(psd + 1e-12)
Spectrogram spectrogram(const Waveform& w, const FramingConfig& cfg, FeatureKind kind);

/// Flat binary dump: 16-byte header (magic "F0SP", u32 I, u32 K, u32 kind)
/// followed by I*K little-endian 32-bit floats, frame-major.
void dump_spectrogram(const Spectrogram& spec, const std::string& path);

}  // namespace f0tk

#endif  // F0TK_SPECTROGRAM_HPP_
