// include/f0tk/fft.hpp

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

#ifndef F0TK_FFT_HPP_
#define F0TK_FFT_HPP_

#include "f0tk/types.hpp"

namespace f0tk {

/// In-place iterative radix-2 Cooley-Tukey transform. The length must be a
/// power of two (ParameterError otherwise).
void fft_radix2_inplace(ComplexVector& a);

ComplexVector fft_radix2(const ComplexVector& a);

/// |X(k)| for k = 0 .. fft_size/2 inclusive of a zero-padded real frame.
/// The frame must fit inside fft_size.
Vector fft_magnitude(const Vector& frame, int fft_size);

}  // namespace f0tk

#endif  // F0TK_FFT_HPP_
