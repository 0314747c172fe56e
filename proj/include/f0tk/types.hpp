// include/f0tk/types.hpp

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

#ifndef F0TK_TYPES_HPP_
#define F0TK_TYPES_HPP_

#include <Eigen/Dense>
#include <vector>

namespace f0tk {

template <typename S>
using MatrixT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VectorT = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Scalar = double;
using Matrix = MatrixT<Scalar>;
using Vector = VectorT<Scalar>;
using ComplexVector = Eigen::VectorXcd;

/// Mono time-domain signal with amplitudes nominally in [-1, 1].
struct Waveform {
  Vector samples;
  int sample_rate_hz = 0;

  long size() const { return samples.size(); }
  double duration_s() const {
    return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
  }
};

struct F0Frame {
  long frame_index = 0;
  double f0_hz = 0.0;
  bool voiced = false;
};

/// Per-frame F0 sequence. Frame i covers time offset_s + i * hop_s.
/// voiced == true iff f0_hz > 0; frame_index strictly increasing.
struct F0Contour {
  std::vector<F0Frame> frames;
  double hop_s = 0.005;
  double offset_s = 0.0;

  long size() const { return static_cast<long>(frames.size()); }
  double frame_time_s(long i) const { return offset_s + frames[i].frame_index * hop_s; }
};

}  // namespace f0tk

#endif  // F0TK_TYPES_HPP_
