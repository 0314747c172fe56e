// include/f0tk/manifest.hpp

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

#ifndef F0TK_MANIFEST_HPP_
#define F0TK_MANIFEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "f0tk/contour_io.hpp"
#include "f0tk/features.hpp"
#include "f0tk/framing.hpp"
#include "f0tk/metrics.hpp"
#include "f0tk/network.hpp"
#include "f0tk/quantizer.hpp"
#include "f0tk/yin.hpp"

namespace f0tk {

struct NoiseEntry {
  std::string name;
  std::string path;
  bool use_in_train = true;  // known noise: mixed into train and test
  bool use_in_test = true;
};

struct DatasetConfig {
  std::string audio_dir;
  std::string truth_dir;
  std::string audio_ext = ".wav";
  std::string truth_ext = ".f0";
  ColumnSpec truth_adapter;
  std::vector<std::string> train;
  std::vector<std::string> cv;
  std::vector<std::string> test;
};

/// One experiment = one manifest: corpus location and splits, noise grid,
/// feature/model/training settings, trackers to run, output directory.
struct ExperimentManifest {
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int sample_rate_hz = 16000;
  FramingConfig framing;
  ContextConfig context;
  Quantizer quantizer;
  TrainConfig training;
  std::vector<long> hidden_units = {1024, 1024, 1024};
  std::vector<std::string> trackers = {"dnn_reg", "rnn_reg", "dnn_hmm", "yin"};
  YinConfig yin;
  EvalConfig eval;
  DatasetConfig dataset;
  std::vector<NoiseEntry> noises;
  std::vector<double> snrs_db;
  bool train_on_clean = true;
};

/// Parses and validates a JSON manifest; any structural or semantic problem
/// raises ConfigError with the offending key.
ExperimentManifest load_manifest(const std::string& path);

/// Invariant checks (disjoint splits, finite SNRs, known tracker names,
/// config ranges). load_manifest calls this; exposed for tests.
void validate_manifest(const ExperimentManifest& m);

}  // namespace f0tk

#endif  // F0TK_MANIFEST_HPP_
