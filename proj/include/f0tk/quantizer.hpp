// include/f0tk/quantizer.hpp

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

#ifndef F0TK_QUANTIZER_HPP_
#define F0TK_QUANTIZER_HPP_

#include <cmath>

#include "f0tk/errors.hpp"

namespace f0tk {

enum class QuantScale { log, linear };

/// Maps F0 values onto a discrete state set: state 0 is reserved for
/// unvoiced, states 1..n_states-1 carry bin centers spanning
/// [f_min_hz, f_max_hz] with the first and last centers pinned to the
/// range ends. The default 68-state layout uses 67 log-spaced voiced bins
/// over 60-400 Hz.
struct Quantizer {
  int n_states = 68;
  double f_min_hz = 60.0;
  double f_max_hz = 400.0;
  QuantScale scale = QuantScale::log;

  int n_voiced_states() const { return n_states - 1; }
};

inline void validate(const Quantizer& q) {
  if (q.n_states < 3) throw ParameterError("quantizer: need at least two voiced states");
  if (!(q.f_min_hz > 0.0) || !(q.f_max_hz > q.f_min_hz)) {
    throw ParameterError("quantizer: require 0 < f_min < f_max");
  }
}

/// Center frequency of voiced state s (1-based); state 0 maps to 0 Hz.
inline double bin_center(const Quantizer& q, int s) {
  if (s <= 0) return 0.0;
  const int v = q.n_voiced_states();
  const double t = static_cast<double>(s - 1) / (v - 1);
  if (q.scale == QuantScale::log) {
    return q.f_min_hz * std::pow(q.f_max_hz / q.f_min_hz, t);
  }
  return q.f_min_hz + t * (q.f_max_hz - q.f_min_hz);
}

/// Nearest state for f_hz; 0 for unvoiced (f <= 0), out-of-range voiced
/// frequencies clamp to the boundary bins.
inline int quantize_f0(double f_hz, const Quantizer& q) {
  if (!(f_hz > 0.0)) return 0;
  const int v = q.n_voiced_states();
  double t;
  if (q.scale == QuantScale::log) {
    t = std::log(f_hz / q.f_min_hz) / std::log(q.f_max_hz / q.f_min_hz);
  } else {
    t = (f_hz - q.f_min_hz) / (q.f_max_hz - q.f_min_hz);
  }
  long s = std::lround(t * (v - 1)) + 1;
  if (s < 1) s = 1;
  if (s > v) s = v;
  return static_cast<int>(s);
}

inline double dequantize(int state, const Quantizer& q) { return bin_center(q, state); }

/// Half the local bin width around the state nearest to f_hz: the worst-case
/// error a classifier limited to bin centers can be expected to make there.
// Largest |dequantize(quantize(f)) - f| over f's quantization cell; the
// cell edges sit halfway to the neighbouring centers in the quantizer's own
// scale (geometric midpoints for log spacing), so this bound is tight.
inline double half_bin_width_at(const Quantizer& q, double f_hz) {
  const int s = quantize_f0(f_hz, q);
  if (s == 0) return 0.0;
  const int v = q.n_voiced_states();
  const double c = bin_center(q, s);
  double worst = 0.0;
  if (s < v) {
    const double up = bin_center(q, s + 1);
    const double edge = q.scale == QuantScale::log ? std::sqrt(c * up) : 0.5 * (c + up);
    worst = std::max(worst, edge - c);
  }
  if (s > 1) {
    const double down = bin_center(q, s - 1);
    const double edge = q.scale == QuantScale::log ? std::sqrt(c * down) : 0.5 * (c + down);
    worst = std::max(worst, c - edge);
  }
  return worst;
}

}  // namespace f0tk

#endif  // F0TK_QUANTIZER_HPP_
