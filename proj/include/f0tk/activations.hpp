// include/f0tk/activations.hpp

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

#ifndef F0TK_ACTIVATIONS_HPP_
#define F0TK_ACTIVATIONS_HPP_

#include "f0tk/errors.hpp"
#include "f0tk/types.hpp"

namespace f0tk {

enum class Activation { identity, relu, tanh, softmax };

template <typename Derived>
auto relu(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(typename Derived::Scalar(0));
}

/// Row-wise softmax with max-subtraction for stability; rows sum to 1.
template <typename Derived>
MatrixT<typename Derived::Scalar> softmax_rows(const Eigen::MatrixBase<Derived>& logits) {
  using S = typename Derived::Scalar;
  MatrixT<S> p = (logits.colwise() - logits.rowwise().maxCoeff()).array().exp().matrix();
  return p.array().colwise() / p.rowwise().sum().array();
}

/// Applies g elementwise (softmax: row-wise over units).
template <typename S>
MatrixT<S> apply_activation(Activation g, const MatrixT<S>& z) {
  switch (g) {
    case Activation::identity:
      return z;
    case Activation::relu:
      return relu(z);
    case Activation::tanh:
      return z.array().tanh().matrix();
    case Activation::softmax:
      return softmax_rows(z);
  }
  throw ParameterError("unknown activation");
}

/// g'(z) expressed through the layer output h = g(z); elementwise factor for
/// backprop. Softmax has no elementwise derivative: its gradient is folded
/// into the cross-entropy loss and must not be requested here.
template <typename S>
MatrixT<S> activation_grad_from_output(Activation g, const MatrixT<S>& h) {
  switch (g) {
    case Activation::identity:
      return MatrixT<S>::Ones(h.rows(), h.cols());
    case Activation::relu:
      return (h.array() > S(0)).template cast<S>().matrix();
    case Activation::tanh:
      return (S(1) - h.array().square()).matrix();
    case Activation::softmax:
      break;
  }
  throw ParameterError("softmax derivative is handled jointly with the loss");
}

}  // namespace f0tk

#endif  // F0TK_ACTIVATIONS_HPP_
