// tests/test_yin.cpp

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

#include "f0tk/errors.hpp"
#include "f0tk/yin.hpp"
#include "test_util.hpp"

using namespace f0tk;

namespace {

YinConfig no_trim_cfg() {
  YinConfig cfg;
  cfg.framing.head_trim_frames = 0;
  cfg.framing.tail_trim_frames = 0;
  return cfg;
}

}  // namespace

TEST_CASE("yin: clean 220 Hz cosine is tracked within 1% on every voiced frame") {
  Waveform w = test::make_tone(220.0, 1.0);
  F0Contour c = yin_track(w, no_trim_cfg());
  REQUIRE(c.size() > 150);
  long voiced = 0, close = 0;
  for (const F0Frame& f : c.frames) {
    if (!f.voiced) continue;
    ++voiced;
    if (std::abs(f.f0_hz - 220.0) / 220.0 < 0.01) ++close;
  }
  CHECK(voiced == c.size());  // a clean tone has no unvoiced frames
  CHECK(close == voiced);
}

TEST_CASE("yin: white noise is at least 80% unvoiced") {
  Waveform w = test::make_white(1.0, 16000, 0.2, 31);
  F0Contour c = yin_track(w, no_trim_cfg());
  REQUIRE(c.size() > 0);
  long unvoiced = 0;
  for (const F0Frame& f : c.frames) unvoiced += f.voiced ? 0 : 1;
  CHECK(static_cast<double>(unvoiced) / c.size() >= 0.8);
}

TEST_CASE("yin: first-dip rule keeps 100 Hz despite strong octave content") {
  // 100 Hz fundamental plus a dominant 200 Hz partial: the global SDF
  // minimum can sit at the 200 Hz lag, but the threshold picks the first
  // dip at the true 10 ms period.
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.resize(16000);
  for (long t = 0; t < 16000; ++t) {
    const double ts = static_cast<double>(t) / 16000.0;
    w.samples[t] = 0.3 * std::cos(2.0 * M_PI * 100.0 * ts) +
                   0.7 * std::cos(2.0 * M_PI * 200.0 * ts);
  }
  F0Contour c = yin_track(w, no_trim_cfg());
  REQUIRE(c.size() > 0);
  long near_100 = 0, voiced = 0;
  for (const F0Frame& f : c.frames) {
    if (!f.voiced) continue;
    ++voiced;
    if (std::abs(f.f0_hz - 100.0) < 3.0) ++near_100;
  }
  CHECK(voiced > 0);
  CHECK(static_cast<double>(near_100) / voiced > 0.95);
}

TEST_CASE("yin: estimates stay inside [f_min, f_max]") {
  Waveform w = test::make_tone(40.0, 0.5);  // below the search floor
  F0Contour c = yin_track(w, no_trim_cfg());
  for (const F0Frame& f : c.frames) {
    if (!f.voiced) continue;
    CHECK(f.f0_hz >= 60.0);
    CHECK(f.f0_hz <= 400.0);
  }
}

TEST_CASE("yin: frame too short to cover two f_min periods is a parameter error") {
  YinConfig cfg = no_trim_cfg();
  cfg.framing.frame_len_s = 0.020;  // 2 periods of 60 Hz need ~33 ms
  Waveform w = test::make_tone(220.0, 0.5);
  CHECK_THROWS_AS(yin_track(w, cfg), ParameterError);
}

TEST_CASE("yin: silence yields unvoiced frames") {
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::Zero(16000);
  F0Contour c = yin_track(w, no_trim_cfg());
  for (const F0Frame& f : c.frames) CHECK_FALSE(f.voiced);
}

TEST_CASE("yin: contour carries the framing's hop and trim offset") {
  YinConfig cfg;  // default trims 400/200
  Waveform w = test::make_tone(220.0, 4.0);
  F0Contour c = yin_track(w, cfg);
  CHECK(c.hop_s == doctest::Approx(0.005));
  CHECK(c.offset_s == doctest::Approx(2.0));  // 400 frames * 5 ms
  CHECK(c.size() > 0);
}

TEST_CASE("yin: deterministic and parallel-invariant") {
  Waveform w = test::make_tone(173.0, 0.8);
  F0Contour a = yin_track(w, no_trim_cfg(), 1);
  F0Contour b = yin_track(w, no_trim_cfg(), 4);
  REQUIRE(a.size() == b.size());
  for (long i = 0; i < a.size(); ++i) {
    CHECK(a.frames[i].f0_hz == b.frames[i].f0_hz);
    CHECK(a.frames[i].voiced == b.frames[i].voiced);
  }
}

TEST_CASE("yin: parabolic interpolation beats the integer-lag grid") {
  // 225 Hz sits between integer lags (16000/225 = 71.1 samples); without
  // interpolation the nearest grid frequencies are 222.2 and 225.35 Hz.
  Waveform w = test::make_tone(225.0, 1.0);
  F0Contour c = yin_track(w, no_trim_cfg());
  double worst = 0.0;
  for (const F0Frame& f : c.frames) {
    if (f.voiced) worst = std::max(worst, std::abs(f.f0_hz - 225.0));
  }
  CHECK(worst < 1.0);  // interpolation gets within 1 Hz; the grid alone cannot
}
