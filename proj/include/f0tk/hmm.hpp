// include/f0tk/hmm.hpp

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

#ifndef F0TK_HMM_HPP_
#define F0TK_HMM_HPP_

#include <vector>

#include "f0tk/types.hpp"

namespace f0tk {

/// Decode-time floor on the state priors, so that states unseen in training
/// cannot blow up the Bayes scaling.
constexpr double kPriorFloor = 1e-8;

struct HmmParams {
  Vector log_prior;  // U entries, log P(s_u); raw normalized counts
  Matrix log_trans;  // U x U, row u holds log P(s_v | s_u); rows sum to 1

  long n_states() const { return log_prior.size(); }
};

/// Counts priors and bigram transitions over the given state sequences.
/// Priors are plain normalized counts (zero counts stay zero probability);
/// transition rows get add-one smoothing so no path has -inf steps.
HmmParams estimate_hmm(const std::vector<std::vector<int>>& state_seqs, int n_states);

/// Bayes-scaled Viterbi over per-frame posteriors (I x U, stochastic rows):
/// maximizes sum_i [log P(s_i|x_i) - log max(P(s_i), kPriorFloor)]
///           + sum_i log P(s_i|s_{i-1}),
/// ties broken toward the lower state id. Returns the I-long state path.
std::vector<int> viterbi_decode(const Matrix& posteriors, const HmmParams& hmm);

}  // namespace f0tk

#endif  // F0TK_HMM_HPP_
