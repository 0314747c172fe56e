// src/losses.cpp

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

#include "f0tk/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "f0tk/errors.hpp"

namespace f0tk {

MseLoss mse_loss(const Vector& pred, const Vector& target) {
  if (pred.size() != target.size()) throw DimensionError("mse_loss: length mismatch");
  if (pred.size() == 0) throw DataError("mse_loss: empty batch");
  const double m = static_cast<double>(pred.size());
  MseLoss out;
  const Vector e = pred - target;
  out.loss = e.squaredNorm() / m;
  out.grad = (2.0 / m) * e;
  return out;
}

CeLoss cross_entropy_loss(const Matrix& probs, const Eigen::VectorXi& target_states) {
  if (probs.rows() != target_states.size()) {
    throw DimensionError("cross_entropy_loss: batch size mismatch");
  }
  if (probs.rows() == 0) throw DataError("cross_entropy_loss: empty batch");
  const long u = probs.cols();
  const double m = static_cast<double>(probs.rows());
  for (long i = 0; i < probs.rows(); ++i) {
    if (std::abs(probs.row(i).sum() - 1.0) > 1e-6) {
      throw ParameterError("cross_entropy_loss: row " + std::to_string(i) +
                           " is not a probability distribution");
    }
  }

  CeLoss out;
  out.grad_logits = probs / m;
  double total = 0.0;
  for (long i = 0; i < probs.rows(); ++i) {
    const int s = target_states(i);
    if (s < 0 || s >= u) {
      throw DimensionError("cross_entropy_loss: target state " + std::to_string(s) +
                           " outside " + std::to_string(u) + " classes");
    }
    total -= std::log(std::max(probs(i, s), 1e-300));
    out.grad_logits(i, s) -= 1.0 / m;
  }
  out.loss = total / m;
  return out;
}

}  // namespace f0tk
