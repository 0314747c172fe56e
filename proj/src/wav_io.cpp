// src/wav_io.cpp

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

#include "f0tk/wav_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "f0tk/binary_io.hpp"
#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr double kInt16Scale = 32768.0;

uint32_t read_tag(std::istream& is) {
  char tag[4];
  is.read(tag, 4);
  if (is.gcount() != 4) throw FormatError("unexpected end of WAV header");
  uint32_t v;
  std::memcpy(&v, tag, 4);
  return v;
}

constexpr uint32_t tag4(const char (&s)[5]) {
  return static_cast<uint32_t>(s[0]) | static_cast<uint32_t>(s[1]) << 8 |
         static_cast<uint32_t>(s[2]) << 16 | static_cast<uint32_t>(s[3]) << 24;
}

}  // namespace

Waveform read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open WAV file: " + path);

  if (read_tag(is) != tag4("RIFF")) throw FormatError(path + ": missing RIFF header");
  read_u32(is);  // RIFF chunk size, not trusted
  if (read_tag(is) != tag4("WAVE")) throw FormatError(path + ": not a WAVE file");

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0, format = 0;
  uint32_t sample_rate = 0;
  Waveform w;

  while (is.peek() != EOF) {
    const uint32_t id = read_tag(is);
    const uint32_t size = read_u32(is);
    if (id == tag4("fmt ")) {
      if (size < 16) throw FormatError(path + ": short fmt chunk");
      format = read_u16(is);
      channels = read_u16(is);
      sample_rate = read_u32(is);
      read_u32(is);  // byte rate
      read_u16(is);  // block align
      bits = read_u16(is);
      is.seekg(size - 16 + (size & 1), std::ios::cur);
      have_fmt = true;
    } else if (id == tag4("data")) {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt");
      if (format != kFormatPcm) throw FormatError(path + ": not PCM encoded");
      if (channels != 1) throw FormatError(path + ": not mono");
      if (bits != 16) throw FormatError(path + ": not 16-bit");
      const uint32_t n = size / 2;
      w.samples.resize(n);
      for (uint32_t i = 0; i < n; ++i) {
        w.samples[i] = static_cast<double>(read_i16(is)) / kInt16Scale;
      }
      if (size & 1) is.seekg(1, std::ios::cur);
      w.sample_rate_hz = static_cast<int>(sample_rate);
      return w;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);
      if (!is) throw FormatError(path + ": truncated chunk");
    }
  }
  throw FormatError(path + ": no data chunk");
}

void write_wav(const Waveform& w, const std::string& path) {
  if (w.sample_rate_hz <= 0) throw ParameterError("write_wav: sample rate must be positive");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot create WAV file: " + path);

  const uint32_t n = static_cast<uint32_t>(w.samples.size());
  const uint32_t data_bytes = n * 2;
  os.write("RIFF", 4);
  write_u32(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_u32(os, 16);
  write_u16(os, kFormatPcm);
  write_u16(os, 1);  // mono
  write_u32(os, static_cast<uint32_t>(w.sample_rate_hz));
  write_u32(os, static_cast<uint32_t>(w.sample_rate_hz) * 2);  // byte rate
  write_u16(os, 2);                                            // block align
  write_u16(os, 16);                                           // bits
  os.write("data", 4);
  write_u32(os, data_bytes);
  for (uint32_t i = 0; i < n; ++i) {
    const double v = std::lrint(w.samples[i] * kInt16Scale);
    write_i16(os, static_cast<int16_t>(std::clamp(v, -32768.0, 32767.0)));
  }
  if (!os) throw FormatError("short write: " + path);
}

}  // namespace f0tk
