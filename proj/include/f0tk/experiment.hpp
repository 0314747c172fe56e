// include/f0tk/experiment.hpp

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

#ifndef F0TK_EXPERIMENT_HPP_
#define F0TK_EXPERIMENT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "f0tk/manifest.hpp"
#include "f0tk/tracker.hpp"
#include "f0tk/yin.hpp"

namespace f0tk {

// Batch drivers behind the CLI subcommands. Experiment outputs live under
// manifest.out_dir:
//   noisy/<noise>/snr<S>dB/<utt>.wav      mixed test/train audio
//   models/<kind>.f0tk, logs/<kind>_training.csv
//   contours/<tracker>/<condition>/<utt>.csv
//   report.csv, per_utterance.csv
// Every driver is deterministic given the manifest seed.

struct SynthSpec {
  long n_utts = 250;
  double duration_s = 1.2;
  double f0_min_hz = 80.0;
  double f0_max_hz = 300.0;
  std::string kind = "mixed";  // constant | glide | vibrato | mixed
  std::uint64_t seed = 0;
  int sample_rate_hz = 16000;
  double hop_s = 0.005;
  int n_harmonics = 8;
  // Split sizes; negative means the 80/10/10 default.
  long n_train = -1;
  long n_cv = -1;
  long n_test = -1;
  double noise_duration_s = 30.0;  // white-noise file written next to the corpus
};

/// Writes wav/<utt>.wav, ref/<utt>.f0, noise/white.wav and corpus.json (a
/// dataset+noises manifest fragment) under out_dir.
void cmd_synth(const SynthSpec& spec, const std::string& out_dir);

/// One noisy copy per (utterance, applicable noise, SNR); train/cv splits
/// use the known noises only, test uses every test-flagged noise.
void cmd_mix(const ExperimentManifest& m, int jobs);

/// Trains one tracker kind on the clean (optional) + known-noise training
/// audio and writes the model and its training log.
void cmd_train(const ExperimentManifest& m, TrackerKind kind, int jobs);

/// Tracks explicit wav files with a model file or with "yin"; one contour
/// CSV per input, named after the wav stem.
void cmd_track_files(const std::string& model_path_or_yin,
                     const std::vector<std::string>& wav_paths, const std::string& out_dir,
                     const YinConfig& yin_cfg, int jobs);

/// Tracks the manifest's full test grid for the given trackers (empty list
/// means manifest.trackers). With no noises configured the clean test set
/// is tracked under the pseudo-condition "clean".
void cmd_track_grid(const ExperimentManifest& m, const std::vector<std::string>& trackers,
                    int jobs);

/// Scores contour CSVs against the ground truth and writes report.csv
/// (pooled per tracker/noise/SNR) and per_utterance.csv under out_dir.
/// contours_root defaults to out_dir/contours when empty; external trackers
/// can be scored by dropping their CSVs into the same layout.
void cmd_eval(const ExperimentManifest& m, const std::string& contours_root, int jobs);

/// Stable seed derivation for per-item randomness (noise offsets).
std::uint64_t derive_seed(std::uint64_t base, const std::string& tag);

/// "snr<S>dB" directory component, e.g. snr-10dB, snr5dB.
std::string snr_dir_name(double snr_db);

}  // namespace f0tk

#endif  // F0TK_EXPERIMENT_HPP_
