// src/model_io.cpp

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

#include "f0tk/model_io.hpp"

#include <fstream>
#include <string>

#include "f0tk/binary_io.hpp"
#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

constexpr char kMagic[4] = {'F', '0', 'T', 'K'};

void write_vector(std::ostream& os, const Vector& v) {
  write_u32(os, static_cast<uint32_t>(v.size()));
  for (long i = 0; i < v.size(); ++i) write_f64(os, v(i));
}

Vector read_vector(std::istream& is) {
  const uint32_t n = read_u32(is);
  Vector v(n);
  for (uint32_t i = 0; i < n; ++i) v(i) = read_f64(is);
  return v;
}

void write_matrix(std::ostream& os, const Matrix& m) {
  write_u32(os, static_cast<uint32_t>(m.rows()));
  write_u32(os, static_cast<uint32_t>(m.cols()));
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) write_f64(os, m(i, j));
  }
}

Matrix read_matrix(std::istream& is) {
  const uint32_t rows = read_u32(is);
  const uint32_t cols = read_u32(is);
  Matrix m(rows, cols);
  for (uint32_t i = 0; i < rows; ++i) {
    for (uint32_t j = 0; j < cols; ++j) m(i, j) = read_f64(is);
  }
  return m;
}

void write_dense(std::ostream& os, const DenseLayer& layer) {
  write_u32(os, static_cast<uint32_t>(layer.activation));
  write_matrix(os, layer.W);
}

DenseLayer read_dense(std::istream& is) {
  DenseLayer layer;
  const uint32_t act = read_u32(is);
  if (act > 3) throw FormatError("model file: bad activation tag");
  layer.activation = static_cast<Activation>(act);
  layer.W = read_matrix(is);
  return layer;
}

void write_ffnet(std::ostream& os, const FeedForwardNet& net) {
  write_u32(os, static_cast<uint32_t>(net.layers.size()));
  for (const DenseLayer& l : net.layers) write_dense(os, l);
  write_u32(os, static_cast<uint32_t>(net.batch_norms.size()));
  for (const BatchNorm& bn : net.batch_norms) {
    write_vector(os, bn.gamma);
    write_vector(os, bn.beta);
    write_vector(os, bn.running_mean);
    write_vector(os, bn.running_var);
    write_f64(os, bn.momentum);
    write_f64(os, bn.eps);
  }
}

FeedForwardNet read_ffnet(std::istream& is) {
  FeedForwardNet net;
  const uint32_t n_layers = read_u32(is);
  for (uint32_t l = 0; l < n_layers; ++l) net.layers.push_back(read_dense(is));
  const uint32_t n_bn = read_u32(is);
  for (uint32_t l = 0; l < n_bn; ++l) {
    BatchNorm bn;
    bn.gamma = read_vector(is);
    bn.beta = read_vector(is);
    bn.running_mean = read_vector(is);
    bn.running_var = read_vector(is);
    bn.momentum = read_f64(is);
    bn.eps = read_f64(is);
    net.batch_norms.push_back(std::move(bn));
  }
  return net;
}

void write_rnnet(std::ostream& os, const RecurrentNet& net) {
  write_u32(os, static_cast<uint32_t>(net.layers.size()));
  for (const RecurrentLayer& l : net.layers) {
    write_matrix(os, l.W);
    write_matrix(os, l.H);
  }
  write_dense(os, net.head);
}

RecurrentNet read_rnnet(std::istream& is) {
  RecurrentNet net;
  const uint32_t n_layers = read_u32(is);
  for (uint32_t l = 0; l < n_layers; ++l) {
    RecurrentLayer layer;
    layer.W = read_matrix(is);
    layer.H = read_matrix(is);
    net.layers.push_back(std::move(layer));
  }
  net.head = read_dense(is);
  return net;
}

}  // namespace

void save_model(const TrackerModel& model, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot create model file: " + path);
  os.write(kMagic, 4);
  write_u32(os, kModelFormatVersion);
  write_u32(os, static_cast<uint32_t>(model.kind));
  write_u32(os, static_cast<uint32_t>(model.sample_rate_hz));

  write_f64(os, model.framing.frame_len_s);
  write_f64(os, model.framing.hop_s);
  write_u32(os, static_cast<uint32_t>(model.framing.window));
  write_u32(os, static_cast<uint32_t>(model.framing.fft_size));
  write_u32(os, static_cast<uint32_t>(model.framing.head_trim_frames));
  write_u32(os, static_cast<uint32_t>(model.framing.tail_trim_frames));
  write_u32(os, static_cast<uint32_t>(model.context.p));

  write_vector(os, model.norm_stats.mean);
  write_vector(os, model.norm_stats.std);

  if (model.kind == TrackerKind::dnn_hmm) {
    write_u32(os, static_cast<uint32_t>(model.quantizer.n_states));
    write_f64(os, model.quantizer.f_min_hz);
    write_f64(os, model.quantizer.f_max_hz);
    write_u32(os, static_cast<uint32_t>(model.quantizer.scale));
    write_vector(os, model.hmm.log_prior);
    write_matrix(os, model.hmm.log_trans);
  }
  if (model.kind == TrackerKind::rnn_reg) {
    write_rnnet(os, model.rnn);
  } else {
    write_ffnet(os, model.dnn);
  }
  if (!os) throw FormatError("short write: " + path);
}

TrackerModel load_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open model file: " + path);
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || std::string(magic, 4) != std::string(kMagic, 4)) {
    throw FormatError("not a tracker model file: " + path);
  }
  const uint32_t version = read_u32(is);
  if (version != kModelFormatVersion) {
    throw FormatError("unsupported model format version " + std::to_string(version));
  }
  const uint32_t kind = read_u32(is);
  if (kind > 2) throw FormatError("model file: bad kind tag");

  TrackerModel model;
  model.kind = static_cast<TrackerKind>(kind);
  model.sample_rate_hz = static_cast<int>(read_u32(is));
  model.framing.frame_len_s = read_f64(is);
  model.framing.hop_s = read_f64(is);
  const uint32_t window = read_u32(is);
  if (window > 2) throw FormatError("model file: bad window tag");
  model.framing.window = static_cast<WindowKind>(window);
  model.framing.fft_size = static_cast<int>(read_u32(is));
  model.framing.head_trim_frames = static_cast<int>(read_u32(is));
  model.framing.tail_trim_frames = static_cast<int>(read_u32(is));
  model.context.p = static_cast<int>(read_u32(is));

  model.norm_stats.mean = read_vector(is);
  model.norm_stats.std = read_vector(is);

  if (model.kind == TrackerKind::dnn_hmm) {
    model.quantizer.n_states = static_cast<int>(read_u32(is));
    model.quantizer.f_min_hz = read_f64(is);
    model.quantizer.f_max_hz = read_f64(is);
    const uint32_t scale = read_u32(is);
    if (scale > 1) throw FormatError("model file: bad quantizer scale tag");
    model.quantizer.scale = static_cast<QuantScale>(scale);
    model.hmm.log_prior = read_vector(is);
    model.hmm.log_trans = read_matrix(is);
  }
  if (model.kind == TrackerKind::rnn_reg) {
    model.rnn = read_rnnet(is);
  } else {
    model.dnn = read_ffnet(is);
  }
  return model;
}

}  // namespace f0tk
