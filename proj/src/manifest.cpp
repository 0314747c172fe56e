// src/manifest.cpp

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

#include "f0tk/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "f0tk/errors.hpp"

namespace f0tk {

namespace {

using nlohmann::json;

WindowKind parse_window(const std::string& s) {
  if (s == "hann") return WindowKind::hann;
  if (s == "hamming") return WindowKind::hamming;
  if (s == "rect") return WindowKind::rect;
  throw ConfigError("manifest: unknown window \"" + s + "\"");
}

LrSchedule parse_schedule(const std::string& s) {
  if (s == "constant") return LrSchedule::constant;
  if (s == "step") return LrSchedule::step;
  throw ConfigError("manifest: unknown lr_schedule \"" + s + "\"");
}

QuantScale parse_scale(const std::string& s) {
  if (s == "log") return QuantScale::log;
  if (s == "linear") return QuantScale::linear;
  throw ConfigError("manifest: unknown quantizer scale \"" + s + "\"");
}

void parse_framing(const json& j, FramingConfig* cfg) {
  cfg->frame_len_s = j.value("frame_len_s", cfg->frame_len_s);
  cfg->hop_s = j.value("hop_s", cfg->hop_s);
  if (j.contains("window")) cfg->window = parse_window(j.at("window").get<std::string>());
  cfg->fft_size = j.value("fft_size", cfg->fft_size);
  cfg->head_trim_frames = j.value("head_trim_frames", cfg->head_trim_frames);
  cfg->tail_trim_frames = j.value("tail_trim_frames", cfg->tail_trim_frames);
}

void parse_dataset(const json& j, DatasetConfig* d) {
  d->audio_dir = j.value("audio_dir", d->audio_dir);
  d->truth_dir = j.value("truth_dir", d->truth_dir);
  d->audio_ext = j.value("audio_ext", d->audio_ext);
  d->truth_ext = j.value("truth_ext", d->truth_ext);
  if (j.contains("truth_adapter")) {
    const json& a = j.at("truth_adapter");
    d->truth_adapter.f0_col = a.value("f0_col", d->truth_adapter.f0_col);
    d->truth_adapter.voicing_col = a.value("voicing_col", d->truth_adapter.voicing_col);
  }
  d->train = j.value("train", d->train);
  d->cv = j.value("cv", d->cv);
  d->test = j.value("test", d->test);
}

}  // namespace

ExperimentManifest load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open manifest: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path + ": " + e.what());
  }

  ExperimentManifest m;
  try {
    m.out_dir = j.value("out_dir", m.out_dir);
    m.seed = j.value("seed", m.seed);
    m.sample_rate_hz = j.value("sample_rate_hz", m.sample_rate_hz);
    if (j.contains("framing")) parse_framing(j.at("framing"), &m.framing);
    if (j.contains("context")) m.context.p = j.at("context").value("p", m.context.p);
    if (j.contains("quantizer")) {
      const json& q = j.at("quantizer");
      m.quantizer.n_states = q.value("n_states", m.quantizer.n_states);
      m.quantizer.f_min_hz = q.value("f_min_hz", m.quantizer.f_min_hz);
      m.quantizer.f_max_hz = q.value("f_max_hz", m.quantizer.f_max_hz);
      if (q.contains("scale")) m.quantizer.scale = parse_scale(q.at("scale").get<std::string>());
    }
    if (j.contains("training")) {
      const json& t = j.at("training");
      m.training.learning_rate = t.value("learning_rate", m.training.learning_rate);
      m.training.epochs = t.value("epochs", m.training.epochs);
      m.training.batch_size = t.value("batch_size", m.training.batch_size);
      m.training.dropout_rate = t.value("dropout_rate", m.training.dropout_rate);
      m.training.seed = t.value("seed", m.seed);
      if (t.contains("lr_schedule")) {
        m.training.lr_schedule = parse_schedule(t.at("lr_schedule").get<std::string>());
      }
      m.training.lr_step_epochs = t.value("lr_step_epochs", m.training.lr_step_epochs);
      m.training.lr_decay = t.value("lr_decay", m.training.lr_decay);
      m.hidden_units = t.value("hidden_units", m.hidden_units);
    } else {
      m.training.seed = m.seed;
    }
    m.trackers = j.value("trackers", m.trackers);
    if (j.contains("yin")) {
      const json& y = j.at("yin");
      m.yin.f_min_hz = y.value("f_min_hz", m.yin.f_min_hz);
      m.yin.f_max_hz = y.value("f_max_hz", m.yin.f_max_hz);
      m.yin.threshold = y.value("threshold", m.yin.threshold);
      // YIN shares the pipeline's hop and trims so contours stay aligned;
      // only the (longer) frame length is its own.
      m.yin.framing = m.framing;
      m.yin.framing.frame_len_s = y.value("frame_len_s", 0.040);
    } else {
      const double frame_len = m.yin.framing.frame_len_s;
      m.yin.framing = m.framing;
      m.yin.framing.frame_len_s = frame_len;
    }
    if (j.contains("eval")) {
      m.eval.gpe_period_threshold_s =
          j.at("eval").value("gpe_period_threshold_s", m.eval.gpe_period_threshold_s);
    }
    if (j.contains("dataset")) parse_dataset(j.at("dataset"), &m.dataset);
    if (j.contains("noises")) {
      for (const json& n : j.at("noises")) {
        NoiseEntry e;
        e.name = n.at("name").get<std::string>();
        e.path = n.at("path").get<std::string>();
        e.use_in_train = n.value("train", true);
        e.use_in_test = n.value("test", true);
        m.noises.push_back(std::move(e));
      }
    }
    m.snrs_db = j.value("snrs_db", m.snrs_db);
    m.train_on_clean = j.value("train_on_clean", m.train_on_clean);
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path + ": " + e.what());
  }

  validate_manifest(m);
  return m;
}

void validate_manifest(const ExperimentManifest& m) {
  if (m.sample_rate_hz <= 0) throw ConfigError("manifest: sample_rate_hz must be positive");
  if (!(m.framing.hop_s > 0.0) || !(m.framing.frame_len_s > 0.0)) {
    throw ConfigError("manifest: framing durations must be positive");
  }
  if (m.framing.fft_size < 2 || (m.framing.fft_size & (m.framing.fft_size - 1)) != 0) {
    throw ConfigError("manifest: fft_size must be a power of two");
  }
  if (m.framing.head_trim_frames < 0 || m.framing.tail_trim_frames < 0) {
    throw ConfigError("manifest: trims must be >= 0");
  }
  if (m.context.p < 0) throw ConfigError("manifest: context.p must be >= 0");
  try {
    validate(m.quantizer);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (!(m.training.learning_rate > 0.0)) {
    throw ConfigError("manifest: learning_rate must be > 0");
  }
  if (m.training.dropout_rate < 0.0 || m.training.dropout_rate >= 1.0) {
    throw ConfigError("manifest: dropout_rate must be in [0, 1)");
  }
  if (m.training.batch_size < 1) throw ConfigError("manifest: batch_size must be >= 1");
  if (m.hidden_units.empty()) throw ConfigError("manifest: hidden_units must not be empty");

  for (const std::string& t : m.trackers) {
    if (t != "dnn_reg" && t != "rnn_reg" && t != "dnn_hmm" && t != "yin") {
      throw ConfigError("manifest: unknown tracker \"" + t + "\"");
    }
  }
  for (double snr : m.snrs_db) {
    if (!std::isfinite(snr)) throw ConfigError("manifest: SNRs must be finite");
  }
  std::set<std::string> seen;
  for (const auto* split : {&m.dataset.train, &m.dataset.cv, &m.dataset.test}) {
    for (const std::string& id : *split) {
      if (!seen.insert(id).second) {
        throw ConfigError("manifest: utterance \"" + id + "\" appears in more than one split");
      }
    }
  }
  std::set<std::string> noise_names;
  for (const NoiseEntry& n : m.noises) {
    if (n.name.empty() || n.path.empty()) {
      throw ConfigError("manifest: noise entries need name and path");
    }
    if (!noise_names.insert(n.name).second) {
      throw ConfigError("manifest: duplicate noise \"" + n.name + "\"");
    }
  }
}

}  // namespace f0tk
