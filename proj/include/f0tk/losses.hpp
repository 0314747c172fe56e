// include/f0tk/losses.hpp

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

#ifndef F0TK_LOSSES_HPP_
#define F0TK_LOSSES_HPP_

#include "f0tk/types.hpp"

namespace f0tk {

struct MseLoss {
  double loss = 0.0;
  Vector grad;  // dL/dpred, (2/M)(pred - target)
};

/// Mean squared error (1/M) sum (pred - target)^2.
MseLoss mse_loss(const Vector& pred, const Vector& target);

struct CeLoss {
  double loss = 0.0;
  Matrix grad_logits;  // (probs - onehot) / M, valid when probs = softmax(logits)
};

/// Mean negative log-probability of the target states. probs rows must sum
/// to 1 (softmax output); the returned gradient is taken at the logits.
CeLoss cross_entropy_loss(const Matrix& probs, const Eigen::VectorXi& target_states);

}  // namespace f0tk

#endif  // F0TK_LOSSES_HPP_
