// tools/f0tk_main.cpp

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

// f0tk: batch front end for the pitch-tracking toolkit. One experiment is
// one JSON manifest; synth/mix/train/track/eval cover the whole grid.
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 training
// divergence.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "f0tk/errors.hpp"
#include "f0tk/experiment.hpp"
#include "f0tk/manifest.hpp"

namespace {

f0tk::ExperimentManifest load_with_overrides(const std::string& path,
                                             const std::optional<std::uint64_t>& seed) {
  f0tk::ExperimentManifest m = f0tk::load_manifest(path);
  if (seed) {
    m.seed = *seed;
    m.training.seed = *seed;
  }
  return m;
}

int run(int argc, char** argv) {
  CLI::App app{"f0tk - neural and autocorrelation F0 trackers"};
  app.require_subcommand(1);

  // synth
  f0tk::SynthSpec synth;
  std::string synth_out = "corpus";
  CLI::App* c_synth = app.add_subcommand("synth", "generate a synthetic corpus");
  c_synth->add_option("--out", synth_out, "corpus directory")->capture_default_str();
  c_synth->add_option("--n", synth.n_utts, "number of utterances")->capture_default_str();
  c_synth->add_option("--duration", synth.duration_s, "utterance length in seconds")
      ->capture_default_str();
  c_synth->add_option("--f0-min", synth.f0_min_hz, "lowest F0 in Hz")->capture_default_str();
  c_synth->add_option("--f0-max", synth.f0_max_hz, "highest F0 in Hz")->capture_default_str();
  c_synth->add_option("--kind", synth.kind, "constant|glide|vibrato|mixed")
      ->capture_default_str();
  c_synth->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
  c_synth->add_option("--rate", synth.sample_rate_hz, "sample rate in Hz")
      ->capture_default_str();
  c_synth->add_option("--harmonics", synth.n_harmonics, "harmonics per tone")
      ->capture_default_str();
  c_synth->add_option("--train", synth.n_train, "train split size (default 80%)");
  c_synth->add_option("--cv", synth.n_cv, "cv split size (default 10%)");
  c_synth->add_option("--test", synth.n_test, "test split size (default 10%)");

  // shared manifest-driven options
  std::string manifest_path;
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;

  // mix
  CLI::App* c_mix = app.add_subcommand("mix", "mix noises into the corpus at the SNR grid");
  c_mix->add_option("--manifest", manifest_path, "experiment manifest")->required();
  c_mix->add_option("--seed", seed_override, "override the manifest seed");
  c_mix->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  // train
  std::string kind_name;
  CLI::App* c_train = app.add_subcommand("train", "train one tracker kind");
  c_train->add_option("--manifest", manifest_path, "experiment manifest")->required();
  c_train->add_option("--kind", kind_name, "dnn_reg|rnn_reg|dnn_hmm")->required();
  c_train->add_option("--seed", seed_override, "override the manifest seed");
  c_train->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  // track
  std::string model_spec;
  std::string track_out = ".";
  std::vector<std::string> wavs;
  std::vector<std::string> grid_trackers;
  CLI::App* c_track = app.add_subcommand(
      "track", "track wav files (or the manifest's whole test grid)");
  c_track->add_option("--model", model_spec, "model file path, or \"yin\"");
  c_track->add_option("--manifest", manifest_path, "experiment manifest");
  c_track->add_option("--out", track_out, "output directory for explicit wavs")
      ->capture_default_str();
  c_track->add_option("--trackers", grid_trackers, "grid mode: tracker subset to run");
  c_track->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  c_track->add_option("wavs", wavs, "wav files to track (omit to run the manifest grid)");

  // eval
  std::string contours_root;
  CLI::App* c_eval = app.add_subcommand("eval", "score contour CSVs into report.csv");
  c_eval->add_option("--manifest", manifest_path, "experiment manifest")->required();
  c_eval->add_option("--contours", contours_root,
                     "contour root (default <out_dir>/contours)");
  c_eval->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, success
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad command line is a configuration error
  }

  if (c_synth->parsed()) {
    f0tk::cmd_synth(synth, synth_out);
  } else if (c_mix->parsed()) {
    f0tk::cmd_mix(load_with_overrides(manifest_path, seed_override), jobs);
  } else if (c_train->parsed()) {
    const f0tk::TrackerKind kind = f0tk::tracker_kind_from_name(kind_name);
    f0tk::cmd_train(load_with_overrides(manifest_path, seed_override), kind, jobs);
  } else if (c_track->parsed()) {
    if (!wavs.empty()) {
      if (model_spec.empty()) {
        throw f0tk::ConfigError("track: --model is required with explicit wav files");
      }
      f0tk::YinConfig yin_cfg;
      if (!manifest_path.empty()) {
        yin_cfg = f0tk::load_manifest(manifest_path).yin;
      } else {
        // Head/tail trims are a corpus-pipeline convention; keep the whole
        // file when tracking ad-hoc wavs.
        yin_cfg.framing.head_trim_frames = 0;
        yin_cfg.framing.tail_trim_frames = 0;
      }
      f0tk::cmd_track_files(model_spec, wavs, track_out, yin_cfg, jobs);
    } else {
      if (manifest_path.empty()) {
        throw f0tk::ConfigError("track: give wav files or --manifest");
      }
      f0tk::cmd_track_grid(f0tk::load_manifest(manifest_path), grid_trackers, jobs);
    }
  } else if (c_eval->parsed()) {
    f0tk::cmd_eval(f0tk::load_manifest(manifest_path), contours_root, jobs);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const f0tk::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const f0tk::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const f0tk::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const f0tk::Error& e) {  // data/format/dimension/model mismatch
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
