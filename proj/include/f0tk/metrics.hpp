// include/f0tk/metrics.hpp

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

#ifndef F0TK_METRICS_HPP_
#define F0TK_METRICS_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "f0tk/types.hpp"

namespace f0tk {

struct EvalConfig {
  double gpe_period_threshold_s = 0.000625;  // 10 samples at 16 kHz
};

/// Counts and FPE moment sums for one utterance (or a pooled group — the
/// representation is closed under aggregate()). A ref-voiced frame is a
/// gross pitch error (GPE) when the estimated period is off by more than
/// the threshold or the tracker called it unvoiced; the remaining
/// ref-voiced frames contribute fine pitch errors e = |est - ref| in Hz.
struct UtteranceScore {
  long n_voiced = 0;
  long n_gpe = 0;
  long n_fpe = 0;
  double fpe_sum_hz = 0.0;    // sum of e over FPE frames
  double fpe_sumsq_hz = 0.0;  // sum of e^2

  double gpe_rate() const {
    return n_voiced > 0 ? static_cast<double>(n_gpe) / static_cast<double>(n_voiced) : 0.0;
  }
  double fpe_mean_hz() const {
    return n_fpe > 0 ? fpe_sum_hz / static_cast<double>(n_fpe) : 0.0;
  }
  double fpe_std_hz() const {
    if (n_fpe == 0) return 0.0;
    const double m = fpe_mean_hz();
    return std::sqrt(std::max(fpe_sumsq_hz / static_cast<double>(n_fpe) - m * m, 0.0));
  }
};

/// Scores est against ref over ref-voiced frames matched by frame_index.
/// Both contours must share hop and offset (alignment error otherwise);
/// ref-voiced frames missing from est are not scored.
UtteranceScore score_utterance(const F0Contour& est, const F0Contour& ref,
                               const EvalConfig& cfg);

/// Pooled counts: GPE rate = sum n_gpe / sum n_voiced over the group, FPE
/// moments over all FPE frames in the group.
UtteranceScore aggregate(const std::vector<UtteranceScore>& rows);

/// One line of the evaluation report.
struct ReportRow {
  std::string tracker;
  std::string noise;
  double snr_db = 0.0;
  std::string utterance;  // empty for pooled rows
  UtteranceScore score;
};

/// CSV `tracker,noise,snr_db,n_voiced,n_gpe,gpe_rate,fpe_mean_hz,fpe_std_hz`
/// (plus an utterance column when any row carries one). Rows with zero
/// scored frames are omitted with a warning on stderr.
void write_eval_report(const std::vector<ReportRow>& rows, const std::string& path);

}  // namespace f0tk

#endif  // F0TK_METRICS_HPP_
