// include/f0tk/network.hpp

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

#ifndef F0TK_NETWORK_HPP_
#define F0TK_NETWORK_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "f0tk/features.hpp"
#include "f0tk/layers.hpp"
#include "f0tk/losses.hpp"

namespace f0tk {

constexpr double kGradClipNorm = 5.0;

enum class LrSchedule { constant, step };

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs = 20;
  long batch_size = 200;
  double dropout_rate = 0.5;  // hidden layers, training only
  std::uint64_t seed = 0;
  LrSchedule lr_schedule = LrSchedule::constant;
  int lr_step_epochs = 10;  // step schedule: multiply by lr_decay every this many epochs
  double lr_decay = 0.5;
};

/// Effective learning rate for a 0-based epoch index under cfg.lr_schedule.
double scheduled_lr(const TrainConfig& cfg, int epoch);

/// Stack of dense layers; batch_norms, when non-empty, holds one normalizer
/// per hidden layer, applied between the affine map and the activation.
struct FeedForwardNet {
  std::vector<DenseLayer> layers;
  std::vector<BatchNorm> batch_norms;

  long input_dim() const { return layers.front().in_dim(); }
  long output_dim() const { return layers.back().out_dim(); }
  bool has_batch_norm() const { return !batch_norms.empty(); }
};

/// Stacked simple-recurrent encoder; only the last time step feeds the
/// dense head.
struct RecurrentNet {
  std::vector<RecurrentLayer> layers;
  DenseLayer head;

  long input_dim() const { return layers.front().in_dim(); }
  long output_dim() const { return head.out_dim(); }
};

FeedForwardNet make_dnn(long input_dim, const std::vector<long>& hidden_units, long output_dim,
                        Activation hidden_act, Activation output_act, bool batch_norm,
                        std::mt19937_64& rng);

RecurrentNet make_rnn(long input_dim, const std::vector<long>& hidden_units, long output_dim,
                      Activation output_act, std::mt19937_64& rng);

/// Inference-mode forward pass: no dropout, batch norm uses running stats.
/// Deterministic.
Matrix dnn_forward(const FeedForwardNet& net, const Matrix& inputs);

/// Runs the steps through the recurrent stack (zero initial state) and
/// applies the head to the final step's top-layer output only; one estimate
/// per instance.
Vector encoder_forward(const RecurrentNet& net, const std::vector<Matrix>& steps);
inline Vector encoder_forward(const RecurrentNet& net, const RnnBatch& batch) {
  return encoder_forward(net, batch.steps);
}

/// Inverted-dropout mask: entries are 0 with probability rate, else
/// 1/(1-rate), so masked activations keep their expectation.
Matrix dropout_mask(long rows, long cols, double rate, std::mt19937_64& rng);

struct DnnGradients {
  std::vector<Matrix> dW;      // per layer
  std::vector<Vector> dgamma;  // per hidden layer when batch norm is on
  std::vector<Vector> dbeta;
};

struct RnnGradients {
  std::vector<Matrix> dW;
  std::vector<Matrix> dH;
  Matrix dW_head;
};

/// Training-mode loss at the current weights: batch-norm batch statistics,
/// no dropout (evaluation must be deterministic for gradient checks).
/// Updates running batch-norm stats as a side effect of the forward pass.
double dnn_training_loss(FeedForwardNet& net, const DnnBatch& batch);

/// Training-mode forward + backward; rate > 0 draws fresh dropout masks from
/// rng. Head/target pairing: softmax head scores target_states with
/// cross-entropy, any other head regresses targets_f0 under MSE.
double dnn_gradients(FeedForwardNet& net, const DnnBatch& batch, double dropout_rate,
                     std::mt19937_64& rng, DnnGradients* grads);

/// One SGD step; returns the batch loss at the pre-update weights.
/// Non-finite loss raises DivergenceError.
double backprop_dnn(FeedForwardNet& net, const DnnBatch& batch, const TrainConfig& cfg,
                    std::mt19937_64& rng);

/// Full (untruncated) backpropagation through time under MSE; pure.
double rnn_gradients(const RecurrentNet& net, const RnnBatch& batch, RnnGradients* grads);

/// Scales all gradients to max_norm when the global L2 norm exceeds it;
/// returns the pre-clip norm.
double clip_gradients(RnnGradients* grads, double max_norm);

/// BPTT + clip at kGradClipNorm + one SGD step; returns pre-update loss.
/// The recurrent model trains without dropout or batch norm. Non-finite
/// loss raises DivergenceError.
double bptt(RecurrentNet& net, const RnnBatch& batch, const TrainConfig& cfg);

}  // namespace f0tk

#endif  // F0TK_NETWORK_HPP_
