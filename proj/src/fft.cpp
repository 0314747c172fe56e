// src/fft.cpp

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

#include "f0tk/fft.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "f0tk/errors.hpp"

namespace f0tk {

void fft_radix2_inplace(ComplexVector& a) {
  const long n = a.size();
  if (n <= 0 || (n & (n - 1)) != 0) {
    throw ParameterError("fft: length must be a power of two, got " + std::to_string(n));
  }
  // Bit-reversal permutation.
  for (long i = 1, j = 0; i < n; ++i) {
    long bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // Butterflies with per-stage root recurrence.
  for (long len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / len;
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (long i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (long k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

ComplexVector fft_radix2(const ComplexVector& a) {
  ComplexVector out = a;
  fft_radix2_inplace(out);
  return out;
}

Vector fft_magnitude(const Vector& frame, int fft_size) {
  if (frame.size() > fft_size) {
    throw ParameterError("fft_magnitude: frame longer than fft_size");
  }
  ComplexVector buf = ComplexVector::Zero(fft_size);
  buf.head(frame.size()).real() = frame;
  fft_radix2_inplace(buf);
  return buf.head(fft_size / 2 + 1).cwiseAbs();
}

}  // namespace f0tk
