// include/f0tk/noise.hpp

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

#ifndef F0TK_NOISE_HPP_
#define F0TK_NOISE_HPP_

#include <cstdint>

#include "f0tk/types.hpp"

namespace f0tk {

struct NoiseSpec {
  Waveform noise;
  double snr_db = 0.0;
};

/// Adds a noise segment to the speech at an exact SNR. The segment starts at
/// a seeded uniform random offset into the noise file (tiled cyclically when
/// short) and is scaled by
///   alpha = sqrt(P_s / (P_n * 10^(snr_db / 10)))
/// where P_s and P_n are mean squared amplitudes over the speech span.
///
/// Sample-rate mismatch and silent speech are errors; there is no implicit
/// resampling.
Waveform mix_noise_at_snr(const Waveform& speech, const NoiseSpec& spec, uint64_t seed);

/// 10 * log10(P_s / P_n) over two equal-length signals. Returns +infinity
/// when the noise component is silent.
double measure_snr(const Waveform& speech, const Waveform& noise_component);

}  // namespace f0tk

#endif  // F0TK_NOISE_HPP_
