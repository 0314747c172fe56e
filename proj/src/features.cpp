// src/features.cpp

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

#include "f0tk/features.hpp"

#include <algorithm>
#include <string>

#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

long clamp_frame(long i, long n_frames) { return std::clamp(i, 0L, n_frames - 1); }

void check_frame_id(long id, const Spectrogram& spec, const F0Contour& contour) {
  if (id < 0 || id >= spec.n_frames()) {
    throw DimensionError("frame id " + std::to_string(id) + " outside spectrogram of " +
                         std::to_string(spec.n_frames()) + " frames");
  }
  if (id >= contour.size()) {
    throw DimensionError("frame id " + std::to_string(id) + " not covered by contour of " +
                         std::to_string(contour.size()) + " frames");
  }
}

}  // namespace

Vector augment_context(const Spectrogram& spec, long i, const ContextConfig& cfg) {
  if (cfg.p < 0) throw ParameterError("context half-width must be >= 0");
  if (i < 0 || i >= spec.n_frames()) {
    throw DimensionError("augment_context: frame " + std::to_string(i) + " out of range");
  }
  const long k = spec.n_bins();
  Vector out((2 * cfg.p + 1) * k);
  for (int n = -cfg.p; n <= cfg.p; ++n) {
    out.segment((n + cfg.p) * k, k) = spec.frames.row(clamp_frame(i + n, spec.n_frames()));
  }
  return out;
}

NormStats fit_norm_stats(const std::vector<const Spectrogram*>& specs) {
  long k = -1, n = 0;
  for (const Spectrogram* s : specs) {
    if (k < 0) k = s->n_bins();
    if (s->n_bins() != k) throw DimensionError("fit_norm_stats: mixed bin counts");
    n += s->n_frames();
  }
  if (n < 1) throw DataError("fit_norm_stats: no frames");

  Vector sum = Vector::Zero(k), sumsq = Vector::Zero(k);
  for (const Spectrogram* s : specs) {
    sum += s->frames.colwise().sum().transpose();
    sumsq += s->frames.array().square().matrix().colwise().sum().transpose();
  }
  NormStats stats;
  stats.mean = sum / n;
  // Population variance; clamp tiny negatives from cancellation.
  stats.std = (sumsq.array() / n - stats.mean.array().square()).max(0.0).sqrt();
  stats.std = stats.std.cwiseMax(kStdFloor);
  return stats;
}

NormStats fit_norm_stats(const std::vector<Spectrogram>& specs) {
  std::vector<const Spectrogram*> ptrs;
  ptrs.reserve(specs.size());
  for (const Spectrogram& s : specs) ptrs.push_back(&s);
  return fit_norm_stats(ptrs);
}

Vector normalized_frame(const Spectrogram& spec, long i, const NormStats& stats) {
  if (stats.mean.size() != spec.n_bins()) {
    throw DimensionError("norm stats for " + std::to_string(stats.mean.size()) +
                         " bins applied to " + std::to_string(spec.n_bins()));
  }
  return (spec.frames.row(i).transpose() - stats.mean).cwiseQuotient(stats.std);
}

Vector normalized_context_row(const Spectrogram& spec, long i, const ContextConfig& cfg,
                              const NormStats& stats) {
  if (stats.mean.size() != spec.n_bins()) {
    throw DimensionError("normalized_context_row: norm stats dim mismatch");
  }
  const long k = spec.n_bins();
  Vector row = augment_context(spec, i, cfg);
  for (int n = 0; n < 2 * cfg.p + 1; ++n) {
    row.segment(n * k, k) =
        (row.segment(n * k, k) - stats.mean).cwiseQuotient(stats.std).eval();
  }
  return row;
}

DnnBatch build_dnn_batch(const Spectrogram& spec, const F0Contour& contour,
                         const std::vector<long>& frame_ids, const ContextConfig& cfg,
                         const Quantizer* quantizer, const NormStats& stats) {
  const long k = spec.n_bins();
  if (stats.mean.size() != k) throw DimensionError("build_dnn_batch: norm stats dim mismatch");

  std::vector<long> kept;
  kept.reserve(frame_ids.size());
  for (long id : frame_ids) {
    check_frame_id(id, spec, contour);
    if (quantizer == nullptr && !contour.frames[id].voiced) continue;
    kept.push_back(id);
  }
  if (kept.empty()) throw DataError("build_dnn_batch: no voiced frames in regression batch");

  const long m = static_cast<long>(kept.size());
  const long width = (2L * cfg.p + 1) * k;
  DnnBatch batch;
  batch.inputs.resize(m, width);
  batch.frame_ids = kept;
  if (quantizer == nullptr) {
    batch.targets_f0.resize(m);
  } else {
    batch.target_states.resize(m);
  }

  for (long r = 0; r < m; ++r) {
    batch.inputs.row(r) = normalized_context_row(spec, kept[r], cfg, stats).transpose();
    const F0Frame& f = contour.frames[kept[r]];
    if (quantizer == nullptr) {
      batch.targets_f0(r) = f.f0_hz;
    } else {
      batch.target_states(r) = f.voiced ? quantize_f0(f.f0_hz, *quantizer) : 0;
    }
  }
  return batch;
}

RnnBatch build_rnn_batch(const Spectrogram& spec, const F0Contour& contour,
                         const std::vector<long>& frame_ids, const ContextConfig& cfg,
                         const NormStats& stats) {
  const long k = spec.n_bins();
  if (stats.mean.size() != k) throw DimensionError("build_rnn_batch: norm stats dim mismatch");

  std::vector<long> kept;
  kept.reserve(frame_ids.size());
  for (long id : frame_ids) {
    check_frame_id(id, spec, contour);
    if (contour.frames[id].voiced) kept.push_back(id);
  }
  if (kept.empty()) throw DataError("build_rnn_batch: no voiced frames in regression batch");

  const long m = static_cast<long>(kept.size());
  RnnBatch batch;
  batch.frame_ids = kept;
  batch.targets_f0.resize(m);
  batch.steps.assign(2 * cfg.p + 1, Matrix(m, k));
  for (long r = 0; r < m; ++r) {
    batch.targets_f0(r) = contour.frames[kept[r]].f0_hz;
    for (int n = 0; n < 2 * cfg.p + 1; ++n) {
      const long src = clamp_frame(kept[r] - cfg.p + n, spec.n_frames());
      batch.steps[n].row(r) = normalized_frame(spec, src, stats).transpose();
    }
  }
  return batch;
}

}  // namespace f0tk
