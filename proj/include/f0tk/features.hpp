// include/f0tk/features.hpp

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

#ifndef F0TK_FEATURES_HPP_
#define F0TK_FEATURES_HPP_

#include <vector>

#include "f0tk/quantizer.hpp"
#include "f0tk/spectrogram.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

/// Context half-width; a target frame is presented together with p
/// neighbors on each side.
struct ContextConfig {
  int p = 7;
};

/// Per-bin z-score statistics, frozen from the training set.
struct NormStats {
  Vector mean;
  Vector std;  // floored at kStdFloor, so always > 0
};

constexpr double kStdFloor = 1e-8;

/// Feed-forward batch: rows are instances. With p=7 and K=513 bins each
/// row is 15*513 = 7695 wide.
struct DnnBatch {
  Matrix inputs;                 // M x (2p+1)*K
  Vector targets_f0;             // regression targets, Hz (voiced frames only)
  Eigen::VectorXi target_states; // classification targets (state 0 = unvoiced)
  std::vector<long> frame_ids;
};

/// Sequence batch: steps[n] holds the frames frame_id - p + n for every
/// instance, edge-clamped, each normalized to K columns.
struct RnnBatch {
  std::vector<Matrix> steps;  // 2p+1 matrices, each M x K
  Vector targets_f0;
  std::vector<long> frame_ids;
};

/// [x_{i-p}; ...; x_i; ...; x_{i+p}] with out-of-range neighbors clamped
/// to the first/last frame. Raw (unnormalized) feature values.
Vector augment_context(const Spectrogram& spec, long i, const ContextConfig& cfg);

/// Per-bin moments over every frame of the given spectrograms, std floored.
NormStats fit_norm_stats(const std::vector<const Spectrogram*>& specs);
NormStats fit_norm_stats(const std::vector<Spectrogram>& specs);

/// Frame i of spec as a z-scored K-vector.
Vector normalized_frame(const Spectrogram& spec, long i, const NormStats& stats);

/// augment_context with the z-score applied to every context block.
Vector normalized_context_row(const Spectrogram& spec, long i, const ContextConfig& cfg,
                              const NormStats& stats);

/// Builds normalized context rows plus targets for the listed frames.
/// quantizer == nullptr selects regression mode: unvoiced frames are dropped
/// (no defined target) and an all-unvoiced request raises DataError. With a
/// quantizer every frame is kept and targets are state ids.
DnnBatch build_dnn_batch(const Spectrogram& spec, const F0Contour& contour,
                         const std::vector<long>& frame_ids, const ContextConfig& cfg,
                         const Quantizer* quantizer, const NormStats& stats);

/// Regression-mode sequence batch: 2p+1 steps of M x K normalized frames.
RnnBatch build_rnn_batch(const Spectrogram& spec, const F0Contour& contour,
                         const std::vector<long>& frame_ids, const ContextConfig& cfg,
                         const NormStats& stats);

}  // namespace f0tk

#endif  // F0TK_FEATURES_HPP_
