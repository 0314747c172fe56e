// include/f0tk/binary_io.hpp

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

#ifndef F0TK_BINARY_IO_HPP_
#define F0TK_BINARY_IO_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "f0tk/errors.hpp"

// Little-endian primitive IO used by the model and spectrogram containers.

namespace f0tk {

inline void write_bytes_le(std::ostream& os, const void* p, size_t n) {
  // Host is little-endian on every supported target; byte-swap would go here.
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_bytes_le(std::istream& is, void* p, size_t n) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n) {
    throw FormatError("unexpected end of file");
  }
}

inline void write_u8(std::ostream& os, uint8_t v) { write_bytes_le(os, &v, 1); }
inline void write_u16(std::ostream& os, uint16_t v) { write_bytes_le(os, &v, 2); }
inline void write_u32(std::ostream& os, uint32_t v) { write_bytes_le(os, &v, 4); }
inline void write_i16(std::ostream& os, int16_t v) { write_bytes_le(os, &v, 2); }
inline void write_f32(std::ostream& os, float v) { write_bytes_le(os, &v, 4); }
inline void write_f64(std::ostream& os, double v) { write_bytes_le(os, &v, 8); }

inline uint8_t read_u8(std::istream& is) {
  uint8_t v;
  read_bytes_le(is, &v, 1);
  return v;
}
inline uint16_t read_u16(std::istream& is) {
  uint16_t v;
  read_bytes_le(is, &v, 2);
  return v;
}
inline uint32_t read_u32(std::istream& is) {
  uint32_t v;
  read_bytes_le(is, &v, 4);
  return v;
}
inline int16_t read_i16(std::istream& is) {
  int16_t v;
  read_bytes_le(is, &v, 2);
  return v;
}
inline float read_f32(std::istream& is) {
  float v;
  read_bytes_le(is, &v, 4);
  return v;
}
inline double read_f64(std::istream& is) {
  double v;
  read_bytes_le(is, &v, 8);
  return v;
}

}  // namespace f0tk

#endif  // F0TK_BINARY_IO_HPP_
