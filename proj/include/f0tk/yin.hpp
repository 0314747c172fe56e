// include/f0tk/yin.hpp

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

#ifndef F0TK_YIN_HPP_
#define F0TK_YIN_HPP_

#include "f0tk/framing.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

/// Frames whose normalized difference minimum exceeds this are unvoiced.
constexpr double kYinUnvoicedCmnd = 0.5;

/// Autocorrelation-family baseline settings. The default 40 ms frame covers
/// two periods at f_min = 60 Hz, the minimum the method needs.
struct YinConfig {
  double f_min_hz = 60.0;
  double f_max_hz = 400.0;
  double threshold = 0.1;  // first-dip acceptance level on the CMND
  FramingConfig framing{.frame_len_s = 0.040};
};

/// Per frame: squared-difference function over the lag range
/// [fs/f_max, fs/f_min], cumulative-mean normalization, first dip below
/// threshold (else global minimum), parabolic interpolation, f0 = fs/lag.
/// Throws ParameterError when a frame cannot cover two periods of f_min.
F0Contour yin_track(const Waveform& w, const YinConfig& cfg, int jobs = 1);

}  // namespace f0tk

#endif  // F0TK_YIN_HPP_
