// src/network.cpp

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

#include "f0tk/network.hpp"

#include <cmath>
#include <string>

#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

struct LayerCache {
  Matrix input;  // what the affine map saw (post-dropout output of the layer below)
  Matrix h;      // activation output, pre-dropout
  Matrix mask;   // empty when no dropout was applied
  BnCache bn;    // filled only when the layer is normalized
};

bool is_classification(const FeedForwardNet& net) {
  return net.layers.back().activation == Activation::softmax;
}

void check_dnn_batch(const FeedForwardNet& net, const DnnBatch& batch) {
  if (batch.inputs.cols() != net.input_dim()) {
    throw DimensionError("network expects " + std::to_string(net.input_dim()) +
                         "-dim inputs, batch has " + std::to_string(batch.inputs.cols()));
  }
  if (is_classification(net)) {
    if (batch.target_states.size() != batch.inputs.rows()) {
      throw ModelMismatchError("softmax head requires state targets");
    }
  } else {
    if (batch.targets_f0.size() != batch.inputs.rows()) {
      throw ModelMismatchError("regression head requires f0 targets");
    }
  }
}

/// Training-mode pass: batch-norm batch statistics (running stats updated),
/// optional dropout on hidden outputs. caches may be null when only the
/// output is needed.
Matrix forward_train(FeedForwardNet& net, const Matrix& inputs, double dropout_rate,
                     std::mt19937_64* rng, std::vector<LayerCache>* caches) {
  const long n_layers = static_cast<long>(net.layers.size());
  if (caches != nullptr) caches->resize(n_layers);
  Matrix x = inputs;
  for (long l = 0; l < n_layers; ++l) {
    DenseLayer& layer = net.layers[l];
    const bool hidden = l + 1 < n_layers;
    LayerCache* c = caches != nullptr ? &(*caches)[l] : nullptr;
    if (c != nullptr) c->input = x;

    Matrix z = dense_affine(layer, x);
    if (hidden && net.has_batch_norm()) {
      z = batchnorm_train(net.batch_norms[l], z, c != nullptr ? &c->bn : nullptr);
    }
    Matrix h = apply_activation(layer.activation, z);
    if (c != nullptr) c->h = h;  // pre-dropout, for the activation derivative
    if (hidden && dropout_rate > 0.0) {
      Matrix mask = dropout_mask(h.rows(), h.cols(), dropout_rate, *rng);
      h = h.cwiseProduct(mask);
      if (c != nullptr) c->mask = std::move(mask);
    }
    x = std::move(h);
  }
  return x;
}

double batch_loss(const FeedForwardNet& net, const Matrix& output, const DnnBatch& batch,
                  Matrix* delta_at_logits) {
  if (is_classification(net)) {
    const CeLoss ce = cross_entropy_loss(output, batch.target_states);
    if (delta_at_logits != nullptr) *delta_at_logits = ce.grad_logits;
    return ce.loss;
  }
  if (net.output_dim() != 1) {
    throw ModelMismatchError("regression head must have exactly one unit");
  }
  const MseLoss mse = mse_loss(output.col(0), batch.targets_f0);
  if (delta_at_logits != nullptr) {
    Matrix d = mse.grad;
    if (net.layers.back().activation != Activation::identity) {
      d = d.cwiseProduct(activation_grad_from_output(net.layers.back().activation, output));
    }
    *delta_at_logits = std::move(d);
  }
  return mse.loss;
}

}  // namespace

double scheduled_lr(const TrainConfig& cfg, int epoch) {
  if (cfg.lr_schedule == LrSchedule::constant) return cfg.learning_rate;
  const int steps = cfg.lr_step_epochs > 0 ? epoch / cfg.lr_step_epochs : 0;
  return cfg.learning_rate * std::pow(cfg.lr_decay, steps);
}

FeedForwardNet make_dnn(long input_dim, const std::vector<long>& hidden_units, long output_dim,
                        Activation hidden_act, Activation output_act, bool batch_norm,
                        std::mt19937_64& rng) {
  if (hidden_act == Activation::softmax) {
    throw ParameterError("softmax is only permitted on the output layer");
  }
  FeedForwardNet net;
  long prev = input_dim;
  for (long units : hidden_units) {
    net.layers.push_back(make_dense_layer(units, prev, hidden_act, rng));
    if (batch_norm) net.batch_norms.push_back(make_batch_norm(units));
    prev = units;
  }
  net.layers.push_back(make_dense_layer(output_dim, prev, output_act, rng));
  return net;
}

RecurrentNet make_rnn(long input_dim, const std::vector<long>& hidden_units, long output_dim,
                      Activation output_act, std::mt19937_64& rng) {
  if (hidden_units.empty()) throw ParameterError("recurrent net needs at least one hidden layer");
  if (output_act == Activation::softmax) {
    throw ParameterError("softmax head is not supported on the encoder");
  }
  RecurrentNet net;
  long prev = input_dim;
  for (long units : hidden_units) {
    net.layers.push_back(make_recurrent_layer(units, prev, rng));
    prev = units;
  }
  net.head = make_dense_layer(output_dim, prev, output_act, rng);
  return net;
}

Matrix dnn_forward(const FeedForwardNet& net, const Matrix& inputs) {
  const long n_layers = static_cast<long>(net.layers.size());
  Matrix x = inputs;
  for (long l = 0; l < n_layers; ++l) {
    Matrix z = dense_affine(net.layers[l], x);
    if (l + 1 < n_layers && net.has_batch_norm()) {
      z = batchnorm_infer(net.batch_norms[l], z);
    }
    x = apply_activation(net.layers[l].activation, z);
  }
  return x;
}

Vector encoder_forward(const RecurrentNet& net, const std::vector<Matrix>& steps) {
  if (steps.empty()) throw DimensionError("encoder_forward: no time steps");
  if (net.head.out_dim() != 1) {
    throw ModelMismatchError("encoder head must have exactly one unit");
  }
  const long m = steps.front().rows();
  const long n_layers = static_cast<long>(net.layers.size());
  std::vector<Matrix> hidden(n_layers);
  for (long l = 0; l < n_layers; ++l) {
    hidden[l] = Matrix::Zero(m, net.layers[l].out_dim());
  }
  for (const Matrix& step : steps) {
    if (step.rows() != m) throw DimensionError("encoder_forward: ragged batch");
    const Matrix* below = &step;
    for (long l = 0; l < n_layers; ++l) {
      hidden[l] = recurrent_step(net.layers[l], *below, hidden[l]);
      below = &hidden[l];
    }
  }
  return dense_forward(net.head, hidden.back()).col(0);
}

Matrix dropout_mask(long rows, long cols, double rate, std::mt19937_64& rng) {
  if (rate < 0.0 || rate >= 1.0) throw ParameterError("dropout rate must be in [0, 1)");
  const double keep_scale = 1.0 / (1.0 - rate);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Matrix mask(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) mask(i, j) = dist(rng) < rate ? 0.0 : keep_scale;
  }
  return mask;
}

double dnn_training_loss(FeedForwardNet& net, const DnnBatch& batch) {
  check_dnn_batch(net, batch);
  const Matrix out = forward_train(net, batch.inputs, 0.0, nullptr, nullptr);
  return batch_loss(net, out, batch, nullptr);
}

double dnn_gradients(FeedForwardNet& net, const DnnBatch& batch, double dropout_rate,
                     std::mt19937_64& rng, DnnGradients* grads) {
  check_dnn_batch(net, batch);
  const long n_layers = static_cast<long>(net.layers.size());
  std::vector<LayerCache> caches;
  const Matrix out = forward_train(net, batch.inputs, dropout_rate, &rng, &caches);

  Matrix delta;
  const double loss = batch_loss(net, out, batch, &delta);

  grads->dW.assign(n_layers, Matrix());
  if (net.has_batch_norm()) {
    grads->dgamma.assign(net.batch_norms.size(), Vector());
    grads->dbeta.assign(net.batch_norms.size(), Vector());
  } else {
    grads->dgamma.clear();
    grads->dbeta.clear();
  }

  for (long l = n_layers - 1; l >= 0; --l) {
    const DenseLayer& layer = net.layers[l];
    const LayerCache& c = caches[l];
    Matrix& dw = grads->dW[l];
    dw.resize(layer.W.rows(), layer.W.cols());
    dw.col(0) = delta.colwise().sum().transpose();
    dw.rightCols(layer.in_dim()) = delta.transpose() * c.input;
    if (l == 0) break;

    Matrix d_below = delta * layer.W.rightCols(layer.in_dim());
    const LayerCache& cb = caches[l - 1];
    if (cb.mask.size() > 0) d_below = d_below.cwiseProduct(cb.mask);
    d_below = d_below.cwiseProduct(
        activation_grad_from_output(net.layers[l - 1].activation, cb.h));
    if (net.has_batch_norm()) {
      d_below = batchnorm_backward(net.batch_norms[l - 1], cb.bn, d_below,
                                   &grads->dgamma[l - 1], &grads->dbeta[l - 1]);
    }
    delta = std::move(d_below);
  }
  return loss;
}

double backprop_dnn(FeedForwardNet& net, const DnnBatch& batch, const TrainConfig& cfg,
                    std::mt19937_64& rng) {
  DnnGradients grads;
  const double loss = dnn_gradients(net, batch, cfg.dropout_rate, rng, &grads);
  if (!std::isfinite(loss)) {
    throw DivergenceError("non-finite training loss " + std::to_string(loss) +
                          " on a batch of " + std::to_string(batch.inputs.rows()) + " frames");
  }
  for (size_t l = 0; l < net.layers.size(); ++l) {
    net.layers[l].W -= cfg.learning_rate * grads.dW[l];
  }
  for (size_t l = 0; l < net.batch_norms.size(); ++l) {
    net.batch_norms[l].gamma -= cfg.learning_rate * grads.dgamma[l];
    net.batch_norms[l].beta -= cfg.learning_rate * grads.dbeta[l];
  }
  return loss;
}

double rnn_gradients(const RecurrentNet& net, const RnnBatch& batch, RnnGradients* grads) {
  if (net.head.out_dim() != 1) {
    throw ModelMismatchError("encoder head must have exactly one unit");
  }
  const long n_steps = static_cast<long>(batch.steps.size());
  if (n_steps == 0) throw DimensionError("rnn_gradients: no time steps");
  const long n_layers = static_cast<long>(net.layers.size());
  const long m = batch.steps.front().rows();
  if (batch.targets_f0.size() != m) throw ModelMismatchError("encoder expects f0 targets");

  // Forward, keeping every step's output of every layer for BPTT.
  std::vector<std::vector<Matrix>> h(n_layers, std::vector<Matrix>(n_steps));
  for (long t = 0; t < n_steps; ++t) {
    const Matrix* below = &batch.steps[t];
    for (long l = 0; l < n_layers; ++l) {
      const Matrix& prev = t > 0 ? h[l][t - 1]
                                 : Matrix::Zero(m, net.layers[l].out_dim());
      h[l][t] = recurrent_step(net.layers[l], *below, prev);
      below = &h[l][t];
    }
  }
  const Matrix pred = dense_forward(net.head, h[n_layers - 1][n_steps - 1]);
  const MseLoss mse = mse_loss(pred.col(0), batch.targets_f0);

  grads->dW.assign(n_layers, Matrix());
  grads->dH.assign(n_layers, Matrix());
  for (long l = 0; l < n_layers; ++l) {
    grads->dW[l] = Matrix::Zero(net.layers[l].W.rows(), net.layers[l].W.cols());
    grads->dH[l] = Matrix::Zero(net.layers[l].H.rows(), net.layers[l].H.cols());
  }

  Matrix d_head = mse.grad;
  if (net.head.activation != Activation::identity) {
    d_head = d_head.cwiseProduct(activation_grad_from_output(net.head.activation, pred));
  }
  grads->dW_head.resize(net.head.W.rows(), net.head.W.cols());
  grads->dW_head.col(0) = d_head.colwise().sum().transpose();
  grads->dW_head.rightCols(net.head.in_dim()) = d_head.transpose() * h[n_layers - 1][n_steps - 1];

  // dh[l] holds dL/dh at the step currently being processed; seeded at the
  // last step from the head, then rolled backwards through time.
  std::vector<std::vector<Matrix>> dh(n_layers, std::vector<Matrix>(n_steps));
  dh[n_layers - 1][n_steps - 1] = d_head * net.head.W.rightCols(net.head.in_dim());
  for (long t = n_steps - 1; t >= 0; --t) {
    for (long l = n_layers - 1; l >= 0; --l) {
      Matrix& acc = dh[l][t];
      if (acc.size() == 0) acc = Matrix::Zero(m, net.layers[l].out_dim());
      const Matrix dz = acc.cwiseProduct((1.0 - h[l][t].array().square()).matrix());

      const Matrix& below = l > 0 ? h[l - 1][t] : batch.steps[t];
      grads->dW[l].col(0) += dz.colwise().sum().transpose();
      grads->dW[l].rightCols(net.layers[l].in_dim()) += dz.transpose() * below;
      grads->dH[l].col(0) += dz.colwise().sum().transpose();
      if (t > 0) {
        grads->dH[l].rightCols(net.layers[l].out_dim()) += dz.transpose() * h[l][t - 1];
        Matrix& prev = dh[l][t - 1];
        if (prev.size() == 0) prev = Matrix::Zero(m, net.layers[l].out_dim());
        prev += dz * net.layers[l].H.rightCols(net.layers[l].out_dim());
      }
      if (l > 0) {
        Matrix& lower = dh[l - 1][t];
        if (lower.size() == 0) lower = Matrix::Zero(m, net.layers[l - 1].out_dim());
        lower += dz * net.layers[l].W.rightCols(net.layers[l].in_dim());
      }
    }
  }
  return mse.loss;
}

double clip_gradients(RnnGradients* grads, double max_norm) {
  double sq = grads->dW_head.squaredNorm();
  for (const Matrix& g : grads->dW) sq += g.squaredNorm();
  for (const Matrix& g : grads->dH) sq += g.squaredNorm();
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    grads->dW_head *= scale;
    for (Matrix& g : grads->dW) g *= scale;
    for (Matrix& g : grads->dH) g *= scale;
  }
  return norm;
}

double bptt(RecurrentNet& net, const RnnBatch& batch, const TrainConfig& cfg) {
  RnnGradients grads;
  const double loss = rnn_gradients(net, batch, &grads);
  if (!std::isfinite(loss)) {
    throw DivergenceError("non-finite training loss " + std::to_string(loss) +
                          " on a batch of " + std::to_string(batch.steps.front().rows()) +
                          " sequences");
  }
  clip_gradients(&grads, kGradClipNorm);
  for (size_t l = 0; l < net.layers.size(); ++l) {
    net.layers[l].W -= cfg.learning_rate * grads.dW[l];
    net.layers[l].H -= cfg.learning_rate * grads.dH[l];
  }
  net.head.W -= cfg.learning_rate * grads.dW_head;
  return loss;
}

}  // namespace f0tk
