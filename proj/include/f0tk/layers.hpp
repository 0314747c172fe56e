// include/f0tk/layers.hpp

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

#ifndef F0TK_LAYERS_HPP_
#define F0TK_LAYERS_HPP_

#include <random>

#include "f0tk/activations.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

// Weight layout follows the bias-folded convention: column 0 of W holds the
// bias, columns 1.. the connection weights, so a layer computes
// g(W [1; x]) per instance. Batches keep instances in rows, hence the
// transposed products below.

struct DenseLayer {
  Matrix W;  // q_l x (q_{l-1} + 1)
  Activation activation = Activation::identity;

  long out_dim() const { return W.rows(); }
  long in_dim() const { return W.cols() - 1; }
};

/// Simple (Elman) recurrent unit, tanh-activated: the layer feeds its own
/// previous output back through H, which carries a bias column of its own.
struct RecurrentLayer {
  Matrix W;  // q_l x (q_{l-1} + 1)
  Matrix H;  // q_l x (q_l + 1)

  long out_dim() const { return W.rows(); }
  long in_dim() const { return W.cols() - 1; }
};

struct BatchNorm {
  Vector gamma;
  Vector beta;
  Vector running_mean;
  Vector running_var;
  double momentum = 0.9;
  double eps = 1e-5;

  long units() const { return gamma.size(); }
};

/// Per-batch statistics captured by the training-mode forward pass, needed
/// for the backward pass.
struct BnCache {
  Vector inv_std;  // 1 / sqrt(batch_var + eps)
  Matrix xhat;     // normalized pre-gamma/beta values
};

/// Pre-activation affine map W [1; x] for every row of inputs.
Matrix dense_affine(const DenseLayer& layer, const Matrix& inputs);

/// g(W [1; x]) for every row of inputs.
Matrix dense_forward(const DenseLayer& layer, const Matrix& inputs);

/// tanh(W [1; x_t] + H [1; h_{t-1}]); hidden_prev must be zero at the first
/// step of a sequence.
Matrix recurrent_step(const RecurrentLayer& layer, const Matrix& input_t,
                      const Matrix& hidden_prev);

/// Normalizes with batch statistics (population variance), scales by
/// gamma/beta, and folds the batch moments into the running stats.
Matrix batchnorm_train(BatchNorm& bn, const Matrix& a, BnCache* cache);

/// Normalizes with the frozen running statistics.
Matrix batchnorm_infer(const BatchNorm& bn, const Matrix& a);

/// Gradient of the training-mode normalization. d_out is dL/d(output);
/// returns dL/d(input) and fills dgamma/dbeta.
Matrix batchnorm_backward(const BatchNorm& bn, const BnCache& cache, const Matrix& d_out,
                          Vector* dgamma, Vector* dbeta);

// Glorot-uniform initialization, a = sqrt(6 / (fan_in + fan_out)); bias
// columns start at zero.
DenseLayer make_dense_layer(long out_dim, long in_dim, Activation act, std::mt19937_64& rng);
RecurrentLayer make_recurrent_layer(long out_dim, long in_dim, std::mt19937_64& rng);
BatchNorm make_batch_norm(long units);

}  // namespace f0tk

#endif  // F0TK_LAYERS_HPP_
