// src/hmm.cpp

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

#include "f0tk/hmm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "f0tk/errors.hpp"

namespace f0tk {

HmmParams estimate_hmm(const std::vector<std::vector<int>>& state_seqs, int n_states) {
  if (n_states < 1) throw ParameterError("estimate_hmm: need at least one state");
  Vector prior_count = Vector::Zero(n_states);
  Matrix trans_count = Matrix::Zero(n_states, n_states);
  for (const std::vector<int>& seq : state_seqs) {
    for (size_t t = 0; t < seq.size(); ++t) {
      const int s = seq[t];
      if (s < 0 || s >= n_states) {
        throw DataError("estimate_hmm: state " + std::to_string(s) + " outside 0.." +
                        std::to_string(n_states - 1));
      }
      prior_count(s) += 1.0;
      if (t > 0) trans_count(seq[t - 1], s) += 1.0;
    }
  }
  const double total = prior_count.sum();
  if (total == 0.0) throw DataError("estimate_hmm: no observations");

  HmmParams hmm;
  hmm.log_prior = (prior_count / total).array().log();
  hmm.log_trans.resize(n_states, n_states);
  for (int u = 0; u < n_states; ++u) {
    const double row_total = trans_count.row(u).sum() + n_states;  // add-one
    hmm.log_trans.row(u) = ((trans_count.row(u).array() + 1.0) / row_total).log();
  }
  return hmm;
}

std::vector<int> viterbi_decode(const Matrix& posteriors, const HmmParams& hmm) {
  const long n_frames = posteriors.rows();
  const long u = hmm.n_states();
  if (posteriors.cols() != u) {
    throw DimensionError("viterbi_decode: " + std::to_string(posteriors.cols()) +
                         " posterior columns vs " + std::to_string(u) + " states");
  }
  if (n_frames == 0) return {};

  const double log_floor = std::log(kPriorFloor);
  // Per-frame emission term of Eq's Bayes scaling: log posterior minus the
  // floored log prior.
  Matrix emit(n_frames, u);
  for (long s = 0; s < u; ++s) {
    const double lp = std::max(hmm.log_prior(s), log_floor);
    for (long i = 0; i < n_frames; ++i) {
      emit(i, s) = std::log(posteriors(i, s)) - lp;
    }
  }

  Matrix delta(n_frames, u);
  Eigen::MatrixXi back(n_frames, u);
  delta.row(0) = emit.row(0);
  back.row(0).setZero();
  for (long i = 1; i < n_frames; ++i) {
    for (long s = 0; s < u; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      int best_prev = 0;
      for (long prev = 0; prev < u; ++prev) {
        const double score = delta(i - 1, prev) + hmm.log_trans(prev, s);
        if (score > best) {  // strict: ties keep the lower prev id
          best = score;
          best_prev = static_cast<int>(prev);
        }
      }
      delta(i, s) = best + emit(i, s);
      back(i, s) = best_prev;
    }
  }

  std::vector<int> path(n_frames);
  long best_s = 0;
  for (long s = 1; s < u; ++s) {
    if (delta(n_frames - 1, s) > delta(n_frames - 1, best_s)) best_s = s;
  }
  path[n_frames - 1] = static_cast<int>(best_s);
  for (long i = n_frames - 1; i > 0; --i) {
    path[i - 1] = back(i, path[i]);
  }
  return path;
}

}  // namespace f0tk
