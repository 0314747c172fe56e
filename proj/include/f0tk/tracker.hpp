// include/f0tk/tracker.hpp

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

#ifndef F0TK_TRACKER_HPP_
#define F0TK_TRACKER_HPP_

#include <string>
#include <vector>

#include "f0tk/features.hpp"
#include "f0tk/framing.hpp"
#include "f0tk/hmm.hpp"
#include "f0tk/network.hpp"
#include "f0tk/quantizer.hpp"
#include "f0tk/spectrogram.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

enum class TrackerKind { dnn_reg, rnn_reg, dnn_hmm };

const char* tracker_kind_name(TrackerKind kind);
TrackerKind tracker_kind_from_name(const std::string& name);

/// A trained tracker and everything needed to run it on raw audio.
/// dnn uses the feed-forward net (dnn_reg, dnn_hmm), rnn the encoder
/// (rnn_reg); quantizer and hmm are meaningful for dnn_hmm only.
struct TrackerModel {
  TrackerKind kind = TrackerKind::dnn_reg;
  int sample_rate_hz = 16000;
  FramingConfig framing;
  ContextConfig context;
  NormStats norm_stats;
  FeedForwardNet dnn;
  RecurrentNet rnn;
  Quantizer quantizer;
  HmmParams hmm;
};

struct TrackerConfig {
  TrackerKind kind = TrackerKind::dnn_reg;
  int sample_rate_hz = 16000;
  FramingConfig framing;
  ContextConfig context;
  Quantizer quantizer;                            // dnn_hmm only
  std::vector<long> hidden_units = {1024, 1024, 1024};
  TrainConfig train;
};

/// One training utterance: audio plus its ground-truth contour on the
/// untrimmed frame grid (offset 0); alignment to the trimmed spectrogram
/// happens inside train_tracker.
struct TrainUtt {
  Waveform wave;
  F0Contour truth;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double cv_loss = 0.0;
  double lr = 0.0;
  double seconds = 0.0;
};

struct TrainingLog {
  std::vector<EpochStats> epochs;
};

/// CSV `epoch,train_loss,cv_loss,lr,seconds`.
void write_training_log(const TrainingLog& log, const std::string& path);

/// Fits normalization stats on the training set, trains the network with
/// mini-batch SGD (frames shuffled across utterances, without replacement
/// per epoch), evaluates CV loss each epoch, and returns the CV-best
/// weights. dnn_hmm additionally estimates priors/transitions from the
/// quantized ground truth. An empty cv_set falls back to selecting on the
/// training loss.
TrackerModel train_tracker(const TrackerConfig& cfg, const std::vector<TrainUtt>& train_set,
                           const std::vector<TrainUtt>& cv_set, TrainingLog* log,
                           int jobs = 1);

/// Continuous per-frame estimates, clamped to [0, Nyquist]; every frame is
/// marked voiced (regression models do not decide voicing).
F0Contour infer_regression(const TrackerModel& model, const Spectrogram& spec);

/// Per-frame state posteriors (I x U, rows sum to 1); dnn_hmm only.
Matrix posteriors(const TrackerModel& model, const Spectrogram& spec);

/// Raw audio to F0 contour: spectrogram, features, then regression
/// inference or Bayes-scaled Viterbi decoding. dnn_hmm frames decoded to
/// state 0 come back unvoiced with f0 = 0.
F0Contour track(const TrackerModel& model, const Waveform& wave);

}  // namespace f0tk

#endif  // F0TK_TRACKER_HPP_
