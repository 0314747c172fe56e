// src/experiment.cpp

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

#include "f0tk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <utility>

#include <nlohmann/json.hpp>

#include "f0tk/contour_io.hpp"
#include "f0tk/errors.hpp"
#include "f0tk/metrics.hpp"
#include "f0tk/model_io.hpp"
#include "f0tk/noise.hpp"
#include "f0tk/parallel.hpp"
#include "f0tk/synth.hpp"
#include "f0tk/wav_io.hpp"

namespace f0tk {

namespace fs = std::filesystem;

namespace {

fs::path audio_path(const ExperimentManifest& m, const std::string& id) {
  return fs::path(m.dataset.audio_dir) / (id + m.dataset.audio_ext);
}

fs::path truth_path(const ExperimentManifest& m, const std::string& id) {
  return fs::path(m.dataset.truth_dir) / (id + m.dataset.truth_ext);
}

fs::path noisy_path(const ExperimentManifest& m, const std::string& noise, double snr,
                    const std::string& id) {
  return fs::path(m.out_dir) / "noisy" / noise / snr_dir_name(snr) / (id + ".wav");
}

F0Contour load_truth(const ExperimentManifest& m, const std::string& id) {
  return load_f0_ground_truth(truth_path(m, id).string(), m.dataset.truth_adapter,
                              m.framing.hop_s, 0.0);
}

/// Test-grid conditions: (noise name, snr). Falls back to a single "clean"
/// condition when no noise grid is configured.
std::vector<std::pair<std::string, double>> test_conditions(const ExperimentManifest& m) {
  std::vector<std::pair<std::string, double>> conds;
  for (const NoiseEntry& n : m.noises) {
    if (!n.use_in_test) continue;
    for (double snr : m.snrs_db) conds.emplace_back(n.name, snr);
  }
  if (conds.empty()) conds.emplace_back("clean", 0.0);
  return conds;
}

fs::path condition_wav(const ExperimentManifest& m, const std::string& noise, double snr,
                       const std::string& id) {
  return noise == "clean" ? audio_path(m, id) : noisy_path(m, noise, snr, id);
}

fs::path contour_dir(const fs::path& root, const std::string& tracker,
                     const std::string& noise, double snr) {
  const fs::path dir = root / tracker;
  return noise == "clean" ? dir / "clean" : dir / noise / snr_dir_name(snr);
}

fs::path default_contours_root(const ExperimentManifest& m) {
  return fs::path(m.out_dir) / "contours";
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, const std::string& tag) {
  // FNV-1a over the base seed's bytes then the tag.
  std::uint64_t h = 14695981039346656037ull;
  const auto mix = [&h](const unsigned char* p, size_t n) {
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  mix(reinterpret_cast<const unsigned char*>(&base), sizeof(base));
  mix(reinterpret_cast<const unsigned char*>(tag.data()), tag.size());
  return h;
}

std::string snr_dir_name(double snr_db) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "snr%gdB", snr_db);
  return buf;
}

void cmd_synth(const SynthSpec& spec, const std::string& out_dir) {
  if (!(spec.f0_min_hz > 60.0) || !(spec.f0_max_hz < 400.0) ||
      !(spec.f0_min_hz < spec.f0_max_hz)) {
    throw ConfigError("synth: f0 range must lie within (60, 400) Hz");
  }
  if (spec.n_utts < 1) throw ConfigError("synth: need at least one utterance");
  if (spec.kind != "constant" && spec.kind != "glide" && spec.kind != "vibrato" &&
      spec.kind != "mixed") {
    throw ConfigError("synth: unknown contour kind \"" + spec.kind + "\"");
  }

  long n_train = spec.n_train, n_cv = spec.n_cv, n_test = spec.n_test;
  if (n_train < 0 || n_cv < 0 || n_test < 0) {
    n_train = std::lround(0.8 * static_cast<double>(spec.n_utts));
    n_cv = std::lround(0.1 * static_cast<double>(spec.n_utts));
    n_test = spec.n_utts - n_train - n_cv;
  }
  if (n_train + n_cv + n_test != spec.n_utts) {
    throw ConfigError("synth: split sizes must add up to --n");
  }

  const fs::path root(out_dir);
  fs::create_directories(root / "wav");
  fs::create_directories(root / "ref");
  fs::create_directories(root / "noise");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uf0(spec.f0_min_hz, spec.f0_max_hz);
  std::uniform_int_distribution<long> useg(40, 100);  // 0.2-0.5 s at 5 ms hop
  std::uniform_int_distribution<int> ukind(0, 2);
  std::bernoulli_distribution uvoiced(0.8);

  const long n_frames = std::lround(spec.duration_s / spec.hop_s);
  std::vector<std::string> ids;
  ids.reserve(spec.n_utts);
  for (long u = 0; u < spec.n_utts; ++u) {
    char name[32];
    std::snprintf(name, sizeof(name), "utt%04ld", u);
    ids.emplace_back(name);

    std::string kind = spec.kind;
    if (kind == "mixed") {
      kind = std::vector<std::string>{"constant", "glide", "vibrato"}[ukind(rng)];
    }

    F0Contour c;
    c.hop_s = spec.hop_s;
    c.frames.reserve(n_frames);
    bool prev_unvoiced = false;
    for (long pos = 0; pos < n_frames;) {
      const long seg = std::min(useg(rng), n_frames - pos);
      const bool voiced = pos == 0 || prev_unvoiced || uvoiced(rng);
      prev_unvoiced = !voiced;
      if (!voiced) {
        for (long t = 0; t < seg; ++t) c.frames.push_back({pos + t, 0.0, false});
      } else if (kind == "constant") {
        const double f = uf0(rng);
        for (long t = 0; t < seg; ++t) c.frames.push_back({pos + t, f, true});
      } else if (kind == "glide") {
        const double a = uf0(rng), b = uf0(rng);
        for (long t = 0; t < seg; ++t) {
          const double f = seg > 1 ? a + (b - a) * static_cast<double>(t) / (seg - 1) : a;
          c.frames.push_back({pos + t, f, true});
        }
      } else {  // vibrato
        const double center = uf0(rng);
        for (long t = 0; t < seg; ++t) {
          const double phase = 2.0 * M_PI * 5.0 * static_cast<double>(pos + t) * spec.hop_s;
          const double f = std::clamp(center * (1.0 + 0.03 * std::sin(phase)), spec.f0_min_hz,
                                      spec.f0_max_hz);
          c.frames.push_back({pos + t, f, true});
        }
      }
      pos += seg;
    }

    const Waveform w = synth_harmonic(c, spec.n_harmonics, spec.sample_rate_hz, 0.1);
    write_wav(w, (root / "wav" / (ids.back() + ".wav")).string());
    write_ground_truth(c, (root / "ref" / (ids.back() + ".f0")).string());
  }

  // White-noise track for the mixing grid.
  {
    std::mt19937_64 nrng(derive_seed(spec.seed, "white-noise"));
    std::normal_distribution<double> gauss(0.0, 0.1);
    Waveform noise;
    noise.sample_rate_hz = spec.sample_rate_hz;
    noise.samples.resize(std::lround(spec.noise_duration_s * spec.sample_rate_hz));
    for (long i = 0; i < noise.samples.size(); ++i) noise.samples(i) = gauss(nrng);
    write_wav(noise, (root / "noise" / "white.wav").string());
  }

  nlohmann::json frag;
  frag["dataset"]["audio_dir"] = (root / "wav").string();
  frag["dataset"]["truth_dir"] = (root / "ref").string();
  frag["dataset"]["audio_ext"] = ".wav";
  frag["dataset"]["truth_ext"] = ".f0";
  frag["dataset"]["truth_adapter"] = {{"f0_col", 0}, {"voicing_col", 1}};
  frag["dataset"]["train"] = std::vector<std::string>(ids.begin(), ids.begin() + n_train);
  frag["dataset"]["cv"] =
      std::vector<std::string>(ids.begin() + n_train, ids.begin() + n_train + n_cv);
  frag["dataset"]["test"] = std::vector<std::string>(ids.begin() + n_train + n_cv, ids.end());
  frag["noises"] = {{{"name", "white"},
                     {"path", (root / "noise" / "white.wav").string()},
                     {"train", true},
                     {"test", true}}};
  std::ofstream js(root / "corpus.json");
  js << frag.dump(2) << "\n";

  std::cout << "synth: wrote " << spec.n_utts << " utterances (" << n_train << " train / "
            << n_cv << " cv / " << n_test << " test) under " << out_dir << "\n";
}

void cmd_mix(const ExperimentManifest& m, int jobs) {
  if (m.noises.empty()) throw ConfigError("mix: manifest has no noises");
  if (m.snrs_db.empty()) throw ConfigError("mix: manifest has no snrs_db");

  std::vector<std::pair<std::string, Waveform>> noise_waves;
  for (const NoiseEntry& n : m.noises) {
    noise_waves.emplace_back(n.name, read_wav(n.path));
  }

  struct Task {
    std::string id;
    long noise_idx;
    double snr;
  };
  std::vector<Task> tasks;
  const auto add_split = [&](const std::vector<std::string>& ids, bool is_test) {
    for (const std::string& id : ids) {
      for (long ni = 0; ni < static_cast<long>(m.noises.size()); ++ni) {
        const bool applicable =
            is_test ? m.noises[ni].use_in_test : m.noises[ni].use_in_train;
        if (!applicable) continue;
        for (double snr : m.snrs_db) tasks.push_back({id, ni, snr});
      }
    }
  };
  add_split(m.dataset.train, false);
  add_split(m.dataset.cv, false);
  add_split(m.dataset.test, true);

  for (const Task& t : tasks) {
    fs::create_directories(noisy_path(m, m.noises[t.noise_idx].name, t.snr, t.id).parent_path());
  }
  parallel_for(static_cast<long>(tasks.size()), jobs, [&](long i) {
    const Task& t = tasks[i];
    const std::string& noise_name = m.noises[t.noise_idx].name;
    const Waveform speech = read_wav(audio_path(m, t.id).string());
    const NoiseSpec spec{noise_waves[t.noise_idx].second, t.snr};
    const std::uint64_t seed =
        derive_seed(m.seed, noise_name + "/" + snr_dir_name(t.snr) + "/" + t.id);
    write_wav(mix_noise_at_snr(speech, spec, seed),
              noisy_path(m, noise_name, t.snr, t.id).string());
  });
  std::cout << "mix: wrote " << tasks.size() << " noisy files under " << m.out_dir
            << "/noisy\n";
}

namespace {

std::vector<TrainUtt> load_split(const ExperimentManifest& m,
                                 const std::vector<std::string>& ids, int jobs) {
  std::vector<std::vector<TrainUtt>> per_id(ids.size());
  parallel_for(static_cast<long>(ids.size()), jobs, [&](long i) {
    const std::string& id = ids[i];
    const F0Contour truth = load_truth(m, id);
    if (m.train_on_clean) {
      per_id[i].push_back({read_wav(audio_path(m, id).string()), truth});
    }
    for (const NoiseEntry& n : m.noises) {
      if (!n.use_in_train) continue;
      for (double snr : m.snrs_db) {
        const fs::path p = noisy_path(m, n.name, snr, id);
        if (!fs::exists(p)) {
          throw DataError("missing noisy file " + p.string() + "; run the mix step first");
        }
        per_id[i].push_back({read_wav(p.string()), truth});
      }
    }
  });
  std::vector<TrainUtt> out;
  for (std::vector<TrainUtt>& v : per_id) {
    for (TrainUtt& u : v) out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

void cmd_train(const ExperimentManifest& m, TrackerKind kind, int jobs) {
  const std::vector<TrainUtt> train = load_split(m, m.dataset.train, jobs);
  const std::vector<TrainUtt> cv = load_split(m, m.dataset.cv, jobs);
  if (train.empty()) throw DataError("train: manifest resolves to an empty training set");

  TrackerConfig cfg;
  cfg.kind = kind;
  cfg.sample_rate_hz = m.sample_rate_hz;
  cfg.framing = m.framing;
  cfg.context = m.context;
  cfg.quantizer = m.quantizer;
  cfg.hidden_units = m.hidden_units;
  cfg.train = m.training;

  TrainingLog log;
  const TrackerModel model = train_tracker(cfg, train, cv, &log, jobs);

  fs::create_directories(fs::path(m.out_dir) / "models");
  fs::create_directories(fs::path(m.out_dir) / "logs");
  const std::string name = tracker_kind_name(kind);
  save_model(model, (fs::path(m.out_dir) / "models" / (name + ".f0tk")).string());
  write_training_log(log,
                     (fs::path(m.out_dir) / "logs" / (name + "_training.csv")).string());
  if (!log.epochs.empty()) {
    std::cout << "train[" << name << "]: " << log.epochs.size() << " epochs, final train loss "
              << log.epochs.back().train_loss << ", best cv loss "
              << std::min_element(log.epochs.begin(), log.epochs.end(),
                                  [](const EpochStats& a, const EpochStats& b) {
                                    return a.cv_loss < b.cv_loss;
                                  })
                     ->cv_loss
              << "\n";
  }
}

void cmd_track_files(const std::string& model_path_or_yin,
                     const std::vector<std::string>& wav_paths, const std::string& out_dir,
                     const YinConfig& yin_cfg, int jobs) {
  if (wav_paths.empty()) throw ConfigError("track: no input wav files");
  fs::create_directories(out_dir);
  const bool use_yin = model_path_or_yin == "yin";
  TrackerModel model;
  if (!use_yin) model = load_model(model_path_or_yin);

  parallel_for(static_cast<long>(wav_paths.size()), jobs, [&](long i) {
    const Waveform w = read_wav(wav_paths[i]);
    const F0Contour c = use_yin ? yin_track(w, yin_cfg) : track(model, w);
    const fs::path out = fs::path(out_dir) / (fs::path(wav_paths[i]).stem().string() + ".csv");
    write_contour_csv(c, out.string());
  });
  std::cout << "track: wrote " << wav_paths.size() << " contours under " << out_dir << "\n";
}

void cmd_track_grid(const ExperimentManifest& m, const std::vector<std::string>& trackers,
                    int jobs) {
  const std::vector<std::string>& list = trackers.empty() ? m.trackers : trackers;
  if (m.dataset.test.empty()) throw DataError("track: manifest has no test utterances");
  const auto conds = test_conditions(m);

  long total = 0;
  for (const std::string& tracker : list) {
    TrackerModel model;
    const bool use_yin = tracker == "yin";
    if (!use_yin) {
      model = load_model(
          (fs::path(m.out_dir) / "models" / (tracker + ".f0tk")).string());
    }
    for (const auto& [noise, snr] : conds) {
      fs::create_directories(contour_dir(default_contours_root(m), tracker, noise, snr));
    }
    std::vector<std::pair<long, long>> items;  // (condition, test index)
    for (long c = 0; c < static_cast<long>(conds.size()); ++c) {
      for (long i = 0; i < static_cast<long>(m.dataset.test.size()); ++i) {
        items.emplace_back(c, i);
      }
    }
    parallel_for(static_cast<long>(items.size()), jobs, [&](long x) {
      const auto& [noise, snr] = conds[items[x].first];
      const std::string& id = m.dataset.test[items[x].second];
      const Waveform w = read_wav(condition_wav(m, noise, snr, id).string());
      const F0Contour c = use_yin ? yin_track(w, m.yin) : track(model, w);
      write_contour_csv(c, (contour_dir(default_contours_root(m), tracker, noise, snr) /
                            (id + ".csv"))
                               .string());
    });
    total += static_cast<long>(items.size());
  }
  std::cout << "track: wrote " << total << " contours under " << m.out_dir << "/contours\n";
}

void cmd_eval(const ExperimentManifest& m, const std::string& contours_root, int jobs) {
  if (m.dataset.test.empty()) throw DataError("eval: manifest has no test utterances");
  const auto conds = test_conditions(m);
  const fs::path root = contours_root.empty() ? default_contours_root(m) : fs::path(contours_root);

  std::vector<ReportRow> pooled;
  std::vector<ReportRow> per_utt;
  for (const std::string& tracker : m.trackers) {
    for (const auto& [noise, snr] : conds) {
      const fs::path dir = contour_dir(root, tracker, noise, snr);
      std::vector<UtteranceScore> scores(m.dataset.test.size());
      parallel_for(static_cast<long>(m.dataset.test.size()), jobs, [&](long i) {
        const std::string& id = m.dataset.test[i];
        const F0Contour est =
            read_contour_csv((dir / (id + ".csv")).string(), m.framing.hop_s);
        const F0Contour ref = align_contour(load_truth(m, id), est.hop_s, est.offset_s);
        scores[i] = score_utterance(est, ref, m.eval);
      });
      for (size_t i = 0; i < scores.size(); ++i) {
        per_utt.push_back({tracker, noise, snr, m.dataset.test[i], scores[i]});
      }
      pooled.push_back({tracker, noise, snr, "", aggregate(scores)});
    }
  }

  write_eval_report(pooled, (fs::path(m.out_dir) / "report.csv").string());
  write_eval_report(per_utt, (fs::path(m.out_dir) / "per_utterance.csv").string());
  for (const ReportRow& r : pooled) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "eval: %-8s %-8s %6.1f dB  GPE %6.2f%%  FPE mu %6.2f Hz  sigma %6.2f Hz\n",
                  r.tracker.c_str(), r.noise.c_str(), r.snr_db, 100.0 * r.score.gpe_rate(),
                  r.score.fpe_mean_hz(), r.score.fpe_std_hz());
    std::cout << line;
  }
  std::cout << "eval: report at " << (fs::path(m.out_dir) / "report.csv").string() << "\n";
}

}  // namespace f0tk
