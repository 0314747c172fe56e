// tests/test_eval.cpp

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "f0tk/manifest.hpp"
#include "f0tk/metrics.hpp"
#include "test_util.hpp"

using namespace f0tk;

namespace {

F0Contour contour_of(const std::vector<double>& f0s, double hop = 0.005) {
  F0Contour c;
  c.hop_s = hop;
  c.frames.resize(static_cast<long>(f0s.size()));
  for (long i = 0; i < c.size(); ++i) c.frames[i] = {i, f0s[i], f0s[i] > 0.0};
  return c;
}

// A syntactically complete manifest body; callers patch fields they care
// about before loading.
std::string manifest_json(const std::string& dir) {
  return std::string("{\n")
      + "  \"out_dir\": \"" + dir + "/out\",\n"
      + "  \"seed\": 7,\n"
      + "  \"dataset\": {\n"
      + "    \"audio_dir\": \"" + dir + "/wav\",\n"
      + "    \"truth_dir\": \"" + dir + "/ref\",\n"
      + "    \"truth_adapter\": {\"f0_col\": 0, \"voicing_col\": 1},\n"
      + "    \"train\": [\"u1\", \"u2\"],\n"
      + "    \"cv\": [\"u3\"],\n"
      + "    \"test\": [\"u4\"]\n"
      + "  },\n"
      + "  \"noises\": [{\"name\": \"white\", \"path\": \"" + dir
      + "/white.wav\", \"train\": true, \"test\": true}],\n"
      + "  \"snrs_db\": [0, 10],\n"
      + "  \"training\": {\"epochs\": 2, \"learning_rate\": 0.01, \"hidden_units\": [8, 8]}\n"
      + "}\n";
}

}  // namespace

TEST_CASE("gpe rule: 100 -> 106 Hz is a fine error of 6 Hz") {
  // |1/100 - 1/106| s = 0.566 ms <= 0.625 ms.
  UtteranceScore s = score_utterance(contour_of({106.0}), contour_of({100.0}), EvalConfig{});
  CHECK(s.n_voiced == 1);
  CHECK(s.n_gpe == 0);
  CHECK(s.n_fpe == 1);
  CHECK(s.fpe_mean_hz() == doctest::Approx(6.0));
  CHECK(s.fpe_std_hz() == doctest::Approx(0.0));
}

TEST_CASE("gpe rule: 100 -> 107 Hz crosses the 0.625 ms period threshold") {
  // |1/100 - 1/107| s = 0.654 ms > 0.625 ms.
  UtteranceScore s = score_utterance(contour_of({107.0}), contour_of({100.0}), EvalConfig{});
  CHECK(s.n_voiced == 1);
  CHECK(s.n_gpe == 1);
  CHECK(s.n_fpe == 0);
  CHECK(s.gpe_rate() == doctest::Approx(1.0));
}

TEST_CASE("gpe rule: estimated-unvoiced on a voiced reference frame is gross") {
  F0Contour est = contour_of({0.0, 150.0});
  F0Contour ref = contour_of({150.0, 150.0});
  UtteranceScore s = score_utterance(est, ref, EvalConfig{});
  CHECK(s.n_voiced == 2);
  CHECK(s.n_gpe == 1);
  CHECK(s.n_fpe == 1);
}

TEST_CASE("gpe rule: reference-unvoiced frames are ignored entirely") {
  F0Contour est = contour_of({321.0, 150.0});
  F0Contour ref = contour_of({0.0, 150.0});
  UtteranceScore s = score_utterance(est, ref, EvalConfig{});
  CHECK(s.n_voiced == 1);
  CHECK(s.n_gpe == 0);
}

TEST_CASE("exact estimate scores a clean zero") {
  F0Contour ref = contour_of({100.0, 0.0, 210.5, 333.25});
  UtteranceScore s = score_utterance(ref, ref, EvalConfig{});
  CHECK(s.n_voiced == 3);
  CHECK(s.gpe_rate() == 0.0);
  CHECK(s.fpe_mean_hz() == 0.0);
  CHECK(s.fpe_std_hz() == 0.0);
}

TEST_CASE("sigma_fpe matches the population definition within 1e-9") {
  // FPE magnitudes 2, 4, 6 Hz at a 300 Hz reference (well under the period
  // threshold): mean 4, population sigma sqrt(8/3).
  F0Contour est = contour_of({302.0, 304.0, 306.0});
  F0Contour ref = contour_of({300.0, 300.0, 300.0});
  UtteranceScore s = score_utterance(est, ref, EvalConfig{});
  CHECK(s.n_fpe == 3);
  CHECK(std::abs(s.fpe_mean_hz() - 4.0) < 1e-9);
  CHECK(std::abs(s.fpe_std_hz() - std::sqrt(8.0 / 3.0)) < 1e-9);
}

TEST_CASE("scoring is over the frame-index intersection") {
  F0Contour est = contour_of({200.0, 200.0});
  F0Contour ref = contour_of({200.0, 200.0, 200.0, 200.0});
  UtteranceScore s = score_utterance(est, ref, EvalConfig{});
  CHECK(s.n_voiced == 2);  // ref frames 2,3 have no estimate and drop out
}

TEST_CASE("mismatched hops refuse to score") {
  F0Contour est = contour_of({100.0});
  F0Contour ref = contour_of({100.0}, 0.010);
  CHECK_THROWS_AS(score_utterance(est, ref, EvalConfig{}), DataError);
}

TEST_CASE("aggregate pools counts: 2/10 and 3/20 give 5/30") {
  UtteranceScore a, b;
  a.n_voiced = 10;
  a.n_gpe = 2;
  a.n_fpe = 8;
  a.fpe_sum_hz = 16.0;
  a.fpe_sumsq_hz = 40.0;
  b.n_voiced = 20;
  b.n_gpe = 3;
  b.n_fpe = 17;
  b.fpe_sum_hz = 17.0;
  b.fpe_sumsq_hz = 30.0;
  UtteranceScore p = aggregate({a, b});
  CHECK(p.n_voiced == 30);
  CHECK(p.n_gpe == 5);
  CHECK(p.gpe_rate() == doctest::Approx(5.0 / 30.0));
  CHECK(p.n_fpe == 25);
  CHECK(p.fpe_mean_hz() == doctest::Approx(33.0 / 25.0));
}

TEST_CASE("aggregate of a single row is the identity") {
  UtteranceScore a;
  a.n_voiced = 7;
  a.n_gpe = 1;
  a.n_fpe = 6;
  a.fpe_sum_hz = 12.0;
  a.fpe_sumsq_hz = 30.0;
  UtteranceScore p = aggregate({a});
  CHECK(p.n_voiced == a.n_voiced);
  CHECK(p.n_gpe == a.n_gpe);
  CHECK(p.fpe_mean_hz() == doctest::Approx(a.fpe_mean_hz()));
  CHECK(p.fpe_std_hz() == doctest::Approx(a.fpe_std_hz()));
}

TEST_CASE("report: zero-voiced groups are omitted, others written") {
  test::TempDir tmp("report");
  UtteranceScore ok;
  ok.n_voiced = 10;
  ok.n_gpe = 1;
  ok.n_fpe = 9;
  ok.fpe_sum_hz = 18.0;
  ok.fpe_sumsq_hz = 45.0;
  UtteranceScore empty;  // all zero
  std::vector<ReportRow> rows = {{"yin", "white", 10.0, "", ok},
                                 {"dnn_reg", "white", 10.0, "", empty}};
  write_eval_report(rows, tmp.file("report.csv"));
  const std::string body = test::read_text(tmp.file("report.csv"));
  CHECK(body.find("tracker,noise,snr_db,n_voiced,n_gpe,gpe_rate,fpe_mean_hz,fpe_std_hz") == 0);
  CHECK(body.find("yin,white,10") != std::string::npos);
  CHECK(body.find("dnn_reg") == std::string::npos);  // zero-voiced row dropped
}

TEST_CASE("report: per-utterance rows include the utterance column") {
  test::TempDir tmp("report");
  UtteranceScore ok;
  ok.n_voiced = 5;
  ok.n_fpe = 5;
  std::vector<ReportRow> rows = {{"yin", "clean", 0.0, "utt0007", ok}};
  write_eval_report(rows, tmp.file("per.csv"));
  const std::string body = test::read_text(tmp.file("per.csv"));
  CHECK(body.find("tracker,noise,snr_db,utterance,") == 0);
  CHECK(body.find("utt0007") != std::string::npos);
}

TEST_CASE("manifest: loads defaults plus overrides from json") {
  test::TempDir tmp("mani");
  test::write_text(tmp.file("m.json"), manifest_json(tmp.path().string()));
  ExperimentManifest m = load_manifest(tmp.file("m.json"));
  CHECK(m.seed == 7);
  CHECK(m.sample_rate_hz == 16000);
  CHECK(m.framing.fft_size == 1024);
  CHECK(m.dataset.train.size() == 2);
  CHECK(m.dataset.truth_adapter.voicing_col == 1);
  CHECK(m.training.epochs == 2);
  CHECK(m.training.seed == 7);  // inherits the manifest seed by default
  CHECK(m.hidden_units == std::vector<long>{8, 8});
  CHECK(m.snrs_db == std::vector<double>{0.0, 10.0});
  REQUIRE(m.noises.size() == 1);
  CHECK(m.noises[0].use_in_train);
  CHECK(m.trackers.size() == 4);  // dnn_reg, rnn_reg, dnn_hmm, yin
  // YIN inherits the manifest framing except its own window length.
  CHECK(m.yin.framing.hop_s == doctest::Approx(m.framing.hop_s));
  CHECK(m.yin.framing.frame_len_s == doctest::Approx(0.040));
}

TEST_CASE("manifest: malformed json is a config error") {
  test::TempDir tmp("mani");
  test::write_text(tmp.file("bad.json"), "{ not json");
  CHECK_THROWS_AS(load_manifest(tmp.file("bad.json")), ConfigError);
  CHECK_THROWS_AS(load_manifest(tmp.file("missing.json")), ConfigError);
}

TEST_CASE("manifest: validation rejects split overlap and bad values") {
  test::TempDir tmp("mani");
  test::write_text(tmp.file("m.json"), manifest_json(tmp.path().string()));
  ExperimentManifest good = load_manifest(tmp.file("m.json"));
  CHECK_NOTHROW(validate_manifest(good));

  ExperimentManifest m = good;
  m.dataset.test.push_back("u1");  // also in train
  CHECK_THROWS_AS(validate_manifest(m), ConfigError);

  m = good;
  m.framing.fft_size = 1000;  // not a power of two
  CHECK_THROWS_AS(validate_manifest(m), ConfigError);

  m = good;
  m.trackers = {"dnn_reg", "hal9000"};
  CHECK_THROWS_AS(validate_manifest(m), ConfigError);

  m = good;
  m.snrs_db = {0.0, std::nan("")};
  CHECK_THROWS_AS(validate_manifest(m), ConfigError);

  m = good;
  m.noises.push_back(m.noises[0]);  // duplicate name
  CHECK_THROWS_AS(validate_manifest(m), ConfigError);
}
