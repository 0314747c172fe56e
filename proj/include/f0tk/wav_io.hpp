// include/f0tk/wav_io.hpp

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

#ifndef F0TK_WAV_IO_HPP_
#define F0TK_WAV_IO_HPP_

#include <string>

#include "f0tk/types.hpp"

namespace f0tk {

/// Reads a RIFF PCM 16-bit mono file. Samples are scaled to [-1, 1) by
/// dividing by 32768. Anything else (stereo, float, compressed) is a
/// FormatError.
Waveform read_wav(const std::string& path);

/// Writes 16-bit PCM mono. Amplitudes are clamped to the int16 range;
/// values of the form k/32768 round-trip bit-identically.
void write_wav(const Waveform& w, const std::string& path);

}  // namespace f0tk

#endif  // F0TK_WAV_IO_HPP_
