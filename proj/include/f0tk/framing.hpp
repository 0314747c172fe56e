// include/f0tk/framing.hpp

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

#ifndef F0TK_FRAMING_HPP_
#define F0TK_FRAMING_HPP_

#include "f0tk/types.hpp"

namespace f0tk {

enum class WindowKind { hann, hamming, rect };

struct FramingConfig {
  double frame_len_s = 0.025;
  double hop_s = 0.005;
  WindowKind window = WindowKind::hann;
  int fft_size = 1024;
  int head_trim_frames = 400;
  int tail_trim_frames = 200;
};

int frame_length_samples(const FramingConfig& cfg, int sample_rate_hz);
int hop_samples(const FramingConfig& cfg, int sample_rate_hz);

/// Raw (unwindowed) analysis frames, one per row. Frame i starts at sample
/// i * hop; only frames lying fully inside the signal are kept, then the
/// head/tail trims are applied. offset_s reflects the head trim so frame
/// row j corresponds to time offset_s + j * hop_s.
struct FrameSet {
  Matrix frames;  // n_frames x frame_len
  bool trim_warning = false;
  double offset_s = 0.0;
  int sample_rate_hz = 0;
};

/// Throws ParameterError if the waveform is shorter than one frame. Trims
/// that swallow every frame yield an empty FrameSet with trim_warning set.
FrameSet frame_signal(const Waveform& w, const FramingConfig& cfg);

Vector make_window(WindowKind kind, int length);

}  // namespace f0tk

#endif  // F0TK_FRAMING_HPP_
