// src/metrics.cpp

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

#include "f0tk/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <unordered_map>

#include "f0tk/errors.hpp"

namespace f0tk {

UtteranceScore score_utterance(const F0Contour& est, const F0Contour& ref,
                               const EvalConfig& cfg) {
  if (!(cfg.gpe_period_threshold_s > 0.0)) {
    throw ParameterError("gpe_period_threshold_s must be > 0");
  }
  if (std::abs(est.hop_s - ref.hop_s) > 1e-9 || std::abs(est.offset_s - ref.offset_s) > 1e-9) {
    throw DataError("score_utterance: contours use different framing (hop/offset mismatch)");
  }

  std::unordered_map<long, const F0Frame*> by_index;
  by_index.reserve(est.frames.size());
  for (const F0Frame& f : est.frames) by_index.emplace(f.frame_index, &f);

  UtteranceScore s;
  for (const F0Frame& r : ref.frames) {
    if (!r.voiced) continue;
    const auto it = by_index.find(r.frame_index);
    if (it == by_index.end()) continue;
    const F0Frame& e = *it->second;
    ++s.n_voiced;
    const bool gross = !e.voiced || !(e.f0_hz > 0.0) ||
                       std::abs(1.0 / e.f0_hz - 1.0 / r.f0_hz) > cfg.gpe_period_threshold_s;
    if (gross) {
      ++s.n_gpe;
    } else {
      const double eps = std::abs(e.f0_hz - r.f0_hz);
      ++s.n_fpe;
      s.fpe_sum_hz += eps;
      s.fpe_sumsq_hz += eps * eps;
    }
  }
  return s;
}

UtteranceScore aggregate(const std::vector<UtteranceScore>& rows) {
  UtteranceScore total;
  for (const UtteranceScore& r : rows) {
    total.n_voiced += r.n_voiced;
    total.n_gpe += r.n_gpe;
    total.n_fpe += r.n_fpe;
    total.fpe_sum_hz += r.fpe_sum_hz;
    total.fpe_sumsq_hz += r.fpe_sumsq_hz;
  }
  return total;
}

void write_eval_report(const std::vector<ReportRow>& rows, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot create report: " + path);
  bool with_utt = false;
  for (const ReportRow& r : rows) with_utt = with_utt || !r.utterance.empty();

  os << "tracker,noise,snr_db" << (with_utt ? ",utterance" : "")
     << ",n_voiced,n_gpe,gpe_rate,fpe_mean_hz,fpe_std_hz\n";
  char buf[128];
  for (const ReportRow& r : rows) {
    if (r.score.n_voiced == 0) {
      std::cerr << "warning: no scored frames for " << r.tracker << "/" << r.noise << "/"
                << r.snr_db << " dB" << (r.utterance.empty() ? "" : "/" + r.utterance)
                << ", row omitted\n";
      continue;
    }
    os << r.tracker << ',' << r.noise << ',' << r.snr_db;
    if (with_utt) os << ',' << r.utterance;
    std::snprintf(buf, sizeof(buf), ",%ld,%ld,%.6f,%.4f,%.4f\n", r.score.n_voiced,
                  r.score.n_gpe, r.score.gpe_rate(), r.score.fpe_mean_hz(),
                  r.score.fpe_std_hz());
    os << buf;
  }
}

}  // namespace f0tk
