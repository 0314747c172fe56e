// src/layers.cpp

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

#include "f0tk/layers.hpp"

#include <cmath>
#include <string>

#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

void check_in_dim(long expect, long got, const char* what) {
  if (expect != got) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(expect) +
                         " inputs, got " + std::to_string(got));
  }
}

Matrix glorot(long rows, long cols, long fan_in, long fan_out, std::mt19937_64& rng) {
  const double a = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-a, a);
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

}  // namespace

Matrix dense_affine(const DenseLayer& layer, const Matrix& inputs) {
  check_in_dim(layer.in_dim(), inputs.cols(), "dense layer");
  Matrix out = inputs * layer.W.rightCols(layer.in_dim()).transpose();
  out.rowwise() += layer.W.col(0).transpose();
  return out;
}

Matrix dense_forward(const DenseLayer& layer, const Matrix& inputs) {
  return apply_activation(layer.activation, Matrix(dense_affine(layer, inputs)));
}

Matrix recurrent_step(const RecurrentLayer& layer, const Matrix& input_t,
                      const Matrix& hidden_prev) {
  check_in_dim(layer.in_dim(), input_t.cols(), "recurrent layer (feedforward)");
  check_in_dim(layer.out_dim(), hidden_prev.cols(), "recurrent layer (feedback)");
  if (input_t.rows() != hidden_prev.rows()) {
    throw DimensionError("recurrent_step: batch size mismatch between input and hidden state");
  }
  Matrix z = input_t * layer.W.rightCols(layer.in_dim()).transpose() +
             hidden_prev * layer.H.rightCols(layer.out_dim()).transpose();
  z.rowwise() += (layer.W.col(0) + layer.H.col(0)).transpose();
  return z.array().tanh().matrix();
}

Matrix batchnorm_train(BatchNorm& bn, const Matrix& a, BnCache* cache) {
  check_in_dim(bn.units(), a.cols(), "batch norm");
  const double m = static_cast<double>(a.rows());
  const Vector mean = a.colwise().mean().transpose();
  const Vector var =
      (a.rowwise() - mean.transpose()).array().square().colwise().sum().transpose() / m;
  const Vector inv_std = (var.array() + bn.eps).rsqrt();

  Matrix xhat = (a.rowwise() - mean.transpose()).array().rowwise() *
                inv_std.transpose().array();
  bn.running_mean = bn.momentum * bn.running_mean + (1.0 - bn.momentum) * mean;
  bn.running_var = bn.momentum * bn.running_var + (1.0 - bn.momentum) * var;
  Matrix out = (xhat.array().rowwise() * bn.gamma.transpose().array()).rowwise() +
               bn.beta.transpose().array();
  if (cache != nullptr) {
    cache->inv_std = inv_std;
    cache->xhat = std::move(xhat);
  }
  return out;
}

Matrix batchnorm_infer(const BatchNorm& bn, const Matrix& a) {
  check_in_dim(bn.units(), a.cols(), "batch norm");
  const Vector inv_std = (bn.running_var.array() + bn.eps).rsqrt();
  return (((a.rowwise() - bn.running_mean.transpose()).array().rowwise() *
           (inv_std.array() * bn.gamma.array()).transpose())
              .rowwise() +
          bn.beta.transpose().array())
      .matrix();
}

Matrix batchnorm_backward(const BatchNorm& bn, const BnCache& cache, const Matrix& d_out,
                          Vector* dgamma, Vector* dbeta) {
  const double m = static_cast<double>(d_out.rows());
  *dgamma = (d_out.array() * cache.xhat.array()).colwise().sum().transpose();
  *dbeta = d_out.colwise().sum().transpose();
  // dL/da for a = input of the normalization, population-variance form:
  // (gamma * inv_std / m) * (m * dy - sum(dy) - xhat * sum(dy * xhat))
  const Eigen::RowVectorXd sum_dy = d_out.colwise().sum();
  const Eigen::RowVectorXd sum_dy_xhat = (d_out.array() * cache.xhat.array()).colwise().sum();
  Matrix dx = m * d_out.array() - (Matrix::Ones(d_out.rows(), 1) * sum_dy).array() -
              cache.xhat.array().rowwise() * sum_dy_xhat.array();
  dx.array().rowwise() *= (bn.gamma.array() * cache.inv_std.array() / m).transpose();
  return dx;
}

DenseLayer make_dense_layer(long out_dim, long in_dim, Activation act, std::mt19937_64& rng) {
  DenseLayer layer;
  layer.activation = act;
  layer.W.resize(out_dim, in_dim + 1);
  layer.W.col(0).setZero();
  layer.W.rightCols(in_dim) = glorot(out_dim, in_dim, in_dim, out_dim, rng);
  return layer;
}

RecurrentLayer make_recurrent_layer(long out_dim, long in_dim, std::mt19937_64& rng) {
  RecurrentLayer layer;
  layer.W.resize(out_dim, in_dim + 1);
  layer.W.col(0).setZero();
  layer.W.rightCols(in_dim) = glorot(out_dim, in_dim, in_dim, out_dim, rng);
  layer.H.resize(out_dim, out_dim + 1);
  layer.H.col(0).setZero();
  layer.H.rightCols(out_dim) = glorot(out_dim, out_dim, out_dim, out_dim, rng);
  return layer;
}

BatchNorm make_batch_norm(long units) {
  BatchNorm bn;
  bn.gamma = Vector::Ones(units);
  bn.beta = Vector::Zero(units);
  bn.running_mean = Vector::Zero(units);
  bn.running_var = Vector::Ones(units);
  return bn;
}

}  // namespace f0tk
