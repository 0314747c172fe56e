// src/tracker.cpp

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

#include "f0tk/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include "f0tk/contour_io.hpp"
#include "f0tk/errors.hpp"
#include "f0tk/parallel.hpp"

namespace f0tk {

namespace {

constexpr FeatureKind kFeatureKind = FeatureKind::log_psd;
constexpr long kInferChunk = 512;  // frames per inference batch, bounds memory

const char* const kKindNames[] = {"dnn_reg", "rnn_reg", "dnn_hmm"};

struct Prepared {
  Spectrogram spec;
  F0Contour truth;  // aligned: frames[i] pairs with spec frame i
  long n_usable() const { return std::min(spec.n_frames(), truth.size()); }
};

using FramePool = std::vector<std::pair<long, long>>;  // (utterance, frame)

std::vector<Prepared> prepare(const std::vector<TrainUtt>& utts, const TrackerConfig& cfg,
                              int jobs) {
  std::vector<Prepared> out(utts.size());
  parallel_for(static_cast<long>(utts.size()), jobs, [&](long u) {
    if (utts[u].wave.sample_rate_hz != cfg.sample_rate_hz) {
      throw DataError("training utterance sampled at " +
                      std::to_string(utts[u].wave.sample_rate_hz) + " Hz, config expects " +
                      std::to_string(cfg.sample_rate_hz));
    }
    out[u].spec = spectrogram(utts[u].wave, cfg.framing, kFeatureKind);
    out[u].truth = align_contour(utts[u].truth, cfg.framing.hop_s, out[u].spec.offset_s);
  });
  return out;
}

FramePool build_pool(const std::vector<Prepared>& data, bool voiced_only) {
  FramePool pool;
  for (long u = 0; u < static_cast<long>(data.size()); ++u) {
    for (long i = 0; i < data[u].n_usable(); ++i) {
      if (voiced_only && !data[u].truth.frames[i].voiced) continue;
      pool.emplace_back(u, i);
    }
  }
  return pool;
}

DnnBatch assemble_dnn(const std::vector<Prepared>& data, const FramePool& pool, long begin,
                      long end, const ContextConfig& ctx, const Quantizer* quantizer,
                      const NormStats& stats) {
  const long m = end - begin;
  DnnBatch batch;
  batch.frame_ids.reserve(m);
  if (quantizer == nullptr) {
    batch.targets_f0.resize(m);
  } else {
    batch.target_states.resize(m);
  }
  for (long r = 0; r < m; ++r) {
    const auto [u, i] = pool[begin + r];
    Vector row = normalized_context_row(data[u].spec, i, ctx, stats);
    if (r == 0) batch.inputs.resize(m, row.size());
    batch.inputs.row(r) = row.transpose();
    batch.frame_ids.push_back(i);
    const F0Frame& f = data[u].truth.frames[i];
    if (quantizer == nullptr) {
      batch.targets_f0(r) = f.f0_hz;
    } else {
      batch.target_states(r) = f.voiced ? quantize_f0(f.f0_hz, *quantizer) : 0;
    }
  }
  return batch;
}

RnnBatch assemble_rnn(const std::vector<Prepared>& data, const FramePool& pool, long begin,
                      long end, const ContextConfig& ctx, const NormStats& stats) {
  const long m = end - begin;
  const long k = stats.mean.size();
  RnnBatch batch;
  batch.frame_ids.reserve(m);
  batch.targets_f0.resize(m);
  batch.steps.assign(2 * ctx.p + 1, Matrix(m, k));
  for (long r = 0; r < m; ++r) {
    const auto [u, i] = pool[begin + r];
    batch.frame_ids.push_back(i);
    batch.targets_f0(r) = data[u].truth.frames[i].f0_hz;
    for (int n = 0; n < 2 * ctx.p + 1; ++n) {
      const long src = std::clamp(i - ctx.p + n, 0L, data[u].spec.n_frames() - 1);
      batch.steps[n].row(r) = normalized_frame(data[u].spec, src, stats).transpose();
    }
  }
  return batch;
}

/// Frame-mean loss over a pool in inference mode (running batch-norm stats,
/// no dropout); used for the CV column and checkpoint selection.
double holdout_loss(const TrackerConfig& cfg, const FeedForwardNet* dnn,
                    const RecurrentNet* rnn, const std::vector<Prepared>& data,
                    const FramePool& pool, const NormStats& stats) {
  const Quantizer* q = cfg.kind == TrackerKind::dnn_hmm ? &cfg.quantizer : nullptr;
  double total = 0.0;
  long count = 0;
  for (long begin = 0; begin < static_cast<long>(pool.size()); begin += kInferChunk) {
    const long end = std::min(begin + kInferChunk, static_cast<long>(pool.size()));
    if (rnn != nullptr) {
      const RnnBatch b = assemble_rnn(data, pool, begin, end, cfg.context, stats);
      const Vector pred = encoder_forward(*rnn, b);
      total += (pred - b.targets_f0).squaredNorm();
    } else {
      const DnnBatch b = assemble_dnn(data, pool, begin, end, cfg.context, q, stats);
      const Matrix out = dnn_forward(*dnn, b.inputs);
      if (q == nullptr) {
        total += (out.col(0) - b.targets_f0).squaredNorm();
      } else {
        for (long r = 0; r < out.rows(); ++r) {
          total -= std::log(std::max(out(r, b.target_states(r)), 1e-300));
        }
      }
    }
    count += end - begin;
  }
  return count > 0 ? total / count : 0.0;
}

double mean_voiced_f0(const std::vector<Prepared>& data, const FramePool& pool) {
  double sum = 0.0;
  for (const auto& [u, i] : pool) sum += data[u].truth.frames[i].f0_hz;
  return pool.empty() ? 0.0 : sum / static_cast<double>(pool.size());
}

}  // namespace

const char* tracker_kind_name(TrackerKind kind) { return kKindNames[static_cast<int>(kind)]; }

TrackerKind tracker_kind_from_name(const std::string& name) {
  for (int k = 0; k < 3; ++k) {
    if (name == kKindNames[k]) return static_cast<TrackerKind>(k);
  }
  throw ParameterError("unknown tracker kind: " + name);
}

void write_training_log(const TrainingLog& log, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot create training log: " + path);
  os << "epoch,train_loss,cv_loss,lr,seconds\n";
  char line[160];
  for (const EpochStats& e : log.epochs) {
    std::snprintf(line, sizeof(line), "%d,%.6f,%.6f,%.6g,%.2f\n", e.epoch, e.train_loss,
                  e.cv_loss, e.lr, e.seconds);
    os << line;
  }
}

TrackerModel train_tracker(const TrackerConfig& cfg, const std::vector<TrainUtt>& train_set,
                           const std::vector<TrainUtt>& cv_set, TrainingLog* log, int jobs) {
  if (train_set.empty()) throw DataError("train_tracker: empty training set");
  if (cfg.hidden_units.empty()) throw ParameterError("train_tracker: no hidden layers");
  if (cfg.train.batch_size < 1) throw ParameterError("train_tracker: batch_size must be >= 1");
  if (cfg.kind == TrackerKind::dnn_hmm) validate(cfg.quantizer);

  const std::vector<Prepared> data = prepare(train_set, cfg, jobs);
  const std::vector<Prepared> cv_data = prepare(cv_set, cfg, jobs);

  std::vector<const Spectrogram*> train_specs;
  for (const Prepared& p : data) train_specs.push_back(&p.spec);
  const NormStats stats = fit_norm_stats(train_specs);

  const bool regression = cfg.kind != TrackerKind::dnn_hmm;
  FramePool pool = build_pool(data, regression);
  const FramePool cv_pool = build_pool(cv_data, regression);
  if (pool.empty()) throw DataError("train_tracker: no usable training frames");

  const long k = stats.mean.size();
  std::mt19937_64 rng(cfg.train.seed);

  TrackerModel model;
  model.kind = cfg.kind;
  model.sample_rate_hz = cfg.sample_rate_hz;
  model.framing = cfg.framing;
  model.context = cfg.context;
  model.norm_stats = stats;
  switch (cfg.kind) {
    case TrackerKind::dnn_reg:
      model.dnn = make_dnn((2L * cfg.context.p + 1) * k, cfg.hidden_units, 1, Activation::relu,
                           Activation::identity, true, rng);
      // Start the head at the mean target so early epochs are not spent
      // covering the raw Hz offset.
      model.dnn.layers.back().W(0, 0) = mean_voiced_f0(data, pool);
      break;
    case TrackerKind::dnn_hmm:
      model.quantizer = cfg.quantizer;
      model.dnn = make_dnn((2L * cfg.context.p + 1) * k, cfg.hidden_units,
                           cfg.quantizer.n_states, Activation::relu, Activation::softmax, true,
                           rng);
      break;
    case TrackerKind::rnn_reg:
      model.rnn = make_rnn(k, cfg.hidden_units, 1, Activation::identity, rng);
      model.rnn.head.W(0, 0) = mean_voiced_f0(data, pool);
      break;
  }

  const Quantizer* q = cfg.kind == TrackerKind::dnn_hmm ? &cfg.quantizer : nullptr;
  const bool use_rnn = cfg.kind == TrackerKind::rnn_reg;
  double best_cv = std::numeric_limits<double>::infinity();
  FeedForwardNet best_dnn;
  RecurrentNet best_rnn;

  for (int epoch = 0; epoch < cfg.train.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    TrainConfig step_cfg = cfg.train;
    step_cfg.learning_rate = scheduled_lr(cfg.train, epoch);

    std::shuffle(pool.begin(), pool.end(), rng);
    double loss_sum = 0.0;
    long frames = 0;
    for (long begin = 0; begin < static_cast<long>(pool.size());
         begin += cfg.train.batch_size) {
      const long end = std::min(begin + cfg.train.batch_size, static_cast<long>(pool.size()));
      double loss;
      if (use_rnn) {
        const RnnBatch b = assemble_rnn(data, pool, begin, end, cfg.context, stats);
        loss = bptt(model.rnn, b, step_cfg);
      } else {
        const DnnBatch b = assemble_dnn(data, pool, begin, end, cfg.context, q, stats);
        loss = backprop_dnn(model.dnn, b, step_cfg, rng);
      }
      loss_sum += loss * static_cast<double>(end - begin);
      frames += end - begin;
    }
    const double train_loss = loss_sum / static_cast<double>(frames);
    const double cv_loss =
        cv_pool.empty() ? train_loss
                        : holdout_loss(cfg, &model.dnn, use_rnn ? &model.rnn : nullptr, cv_data,
                                       cv_pool, stats);
    if (epoch == 0 || cv_loss < best_cv) {
      best_cv = cv_loss;
      best_dnn = model.dnn;
      best_rnn = model.rnn;
    }
    if (log != nullptr) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      log->epochs.push_back({epoch + 1, train_loss, cv_loss, step_cfg.learning_rate, secs});
    }
  }
  if (cfg.train.epochs > 0) {
    model.dnn = std::move(best_dnn);
    model.rnn = std::move(best_rnn);
  }

  if (cfg.kind == TrackerKind::dnn_hmm) {
    std::vector<std::vector<int>> seqs;
    seqs.reserve(data.size());
    for (const Prepared& p : data) {
      std::vector<int> seq;
      seq.reserve(p.n_usable());
      for (long i = 0; i < p.n_usable(); ++i) {
        const F0Frame& f = p.truth.frames[i];
        seq.push_back(f.voiced ? quantize_f0(f.f0_hz, cfg.quantizer) : 0);
      }
      seqs.push_back(std::move(seq));
    }
    model.hmm = estimate_hmm(seqs, cfg.quantizer.n_states);
  }
  return model;
}

namespace {

void check_features(const TrackerModel& model, const Spectrogram& spec) {
  if (spec.kind != kFeatureKind) {
    throw ModelMismatchError("tracker expects log-PSD features");
  }
  if (spec.n_bins() != model.norm_stats.mean.size()) {
    throw ModelMismatchError("model built for " + std::to_string(model.norm_stats.mean.size()) +
                             " bins, spectrogram has " + std::to_string(spec.n_bins()));
  }
}

Matrix forward_chunked(const TrackerModel& model, const Spectrogram& spec) {
  const long n = spec.n_frames();
  Matrix out(n, model.dnn.output_dim());
  for (long begin = 0; begin < n; begin += kInferChunk) {
    const long end = std::min(begin + kInferChunk, n);
    Matrix inputs(end - begin, model.dnn.input_dim());
    for (long i = begin; i < end; ++i) {
      inputs.row(i - begin) =
          normalized_context_row(spec, i, model.context, model.norm_stats).transpose();
    }
    out.middleRows(begin, end - begin) = dnn_forward(model.dnn, inputs);
  }
  return out;
}

F0Contour contour_shell(const Spectrogram& spec) {
  F0Contour c;
  c.hop_s = spec.hop_s;
  c.offset_s = spec.offset_s;
  c.frames.resize(spec.n_frames());
  for (long i = 0; i < spec.n_frames(); ++i) c.frames[i].frame_index = i;
  return c;
}

}  // namespace

F0Contour infer_regression(const TrackerModel& model, const Spectrogram& spec) {
  if (model.kind == TrackerKind::dnn_hmm) {
    throw ModelMismatchError("infer_regression called on a classification model");
  }
  check_features(model, spec);
  const long n = spec.n_frames();
  const double nyquist = model.sample_rate_hz / 2.0;

  Vector pred(n);
  if (model.kind == TrackerKind::dnn_reg) {
    pred = forward_chunked(model, spec).col(0);
  } else {
    const long k = spec.n_bins();
    const int steps = 2 * model.context.p + 1;
    for (long begin = 0; begin < n; begin += kInferChunk) {
      const long end = std::min(begin + kInferChunk, n);
      std::vector<Matrix> chunk(steps, Matrix(end - begin, k));
      for (long i = begin; i < end; ++i) {
        for (int s = 0; s < steps; ++s) {
          const long src = std::clamp(i - model.context.p + s, 0L, n - 1);
          chunk[s].row(i - begin) =
              normalized_frame(spec, src, model.norm_stats).transpose();
        }
      }
      pred.segment(begin, end - begin) = encoder_forward(model.rnn, chunk);
    }
  }

  F0Contour c = contour_shell(spec);
  for (long i = 0; i < n; ++i) {
    c.frames[i].f0_hz = std::clamp(pred(i), 0.0, nyquist);
    c.frames[i].voiced = true;
  }
  return c;
}

Matrix posteriors(const TrackerModel& model, const Spectrogram& spec) {
  if (model.kind != TrackerKind::dnn_hmm) {
    throw ModelMismatchError("posteriors requires a dnn_hmm model");
  }
  check_features(model, spec);
  return forward_chunked(model, spec);
}

F0Contour track(const TrackerModel& model, const Waveform& wave) {
  if (wave.sample_rate_hz != model.sample_rate_hz) {
    throw ModelMismatchError("model expects " + std::to_string(model.sample_rate_hz) +
                             " Hz audio, got " + std::to_string(wave.sample_rate_hz));
  }
  const Spectrogram spec = spectrogram(wave, model.framing, kFeatureKind);
  if (model.kind != TrackerKind::dnn_hmm) return infer_regression(model, spec);

  const Matrix post = posteriors(model, spec);
  const std::vector<int> path = viterbi_decode(post, model.hmm);
  F0Contour c = contour_shell(spec);
  for (long i = 0; i < spec.n_frames(); ++i) {
    c.frames[i].f0_hz = dequantize(path[i], model.quantizer);
    c.frames[i].voiced = path[i] > 0;
  }
  return c;
}

}  // namespace f0tk
