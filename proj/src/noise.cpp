// src/noise.cpp

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

#include "f0tk/noise.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "f0tk/errors.hpp"

namespace f0tk {

Waveform mix_noise_at_snr(const Waveform& speech, const NoiseSpec& spec, uint64_t seed) {
  if (speech.sample_rate_hz != spec.noise.sample_rate_hz) {
    throw DataError("mix_noise_at_snr: sample rates differ (" +
                    std::to_string(speech.sample_rate_hz) + " vs " +
                    std::to_string(spec.noise.sample_rate_hz) + "); resample externally");
  }
  const long n = speech.size();
  const long noise_len = spec.noise.size();
  if (n == 0) throw DataError("mix_noise_at_snr: empty speech");
  if (noise_len == 0) throw DataError("mix_noise_at_snr: empty noise");

  const double p_s = speech.samples.squaredNorm() / n;
  if (p_s <= 0.0) throw DataError("mix_noise_at_snr: silent speech (P_s = 0)");

  std::mt19937_64 rng(seed);
  const long start =
      static_cast<long>(std::uniform_int_distribution<uint64_t>(0, noise_len - 1)(rng));

  Vector segment(n);
  for (long i = 0; i < n; ++i) segment[i] = spec.noise.samples[(start + i) % noise_len];

  const double p_n = segment.squaredNorm() / n;
  if (p_n <= 0.0) throw DataError("mix_noise_at_snr: silent noise segment");

  const double alpha = std::sqrt(p_s / (p_n * std::pow(10.0, spec.snr_db / 10.0)));
  Waveform out;
  out.sample_rate_hz = speech.sample_rate_hz;
  out.samples = speech.samples + alpha * segment;
  return out;
}

double measure_snr(const Waveform& speech, const Waveform& noise_component) {
  if (speech.size() != noise_component.size()) {
    throw DimensionError("measure_snr: lengths differ");
  }
  if (speech.size() == 0) throw DataError("measure_snr: empty input");
  const double p_s = speech.samples.squaredNorm() / speech.size();
  const double p_n = noise_component.samples.squaredNorm() / noise_component.size();
  if (p_n <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(p_s / p_n);
}

}  // namespace f0tk
