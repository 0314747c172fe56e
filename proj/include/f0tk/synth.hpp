// include/f0tk/synth.hpp

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

#ifndef F0TK_SYNTH_HPP_
#define F0TK_SYNTH_HPP_

#include "f0tk/types.hpp"

namespace f0tk {

/// Renders a harmonic tone that follows an F0 contour: on voiced frames the
/// output is amp * sum_{k=1..n} cos(phi_k) with each phi_k advancing at
/// k * f0 per sample, phase-continuous across frame boundaries. Unvoiced
/// frames are silent. The waveform spans the whole contour
/// (offset + n_frames * hop seconds).
///
/// Throws ParameterError when any voiced f0 * n_harmonics reaches Nyquist.
Waveform synth_harmonic(const F0Contour& f0_track, int n_harmonics, int sample_rate_hz,
                        double amp);

}  // namespace f0tk

#endif  // F0TK_SYNTH_HPP_
