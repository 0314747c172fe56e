// tests/test_dsp.cpp

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

#include <fstream>
#include <random>

#include "f0tk/binary_io.hpp"
#include "f0tk/fft.hpp"
#include "f0tk/framing.hpp"
#include "f0tk/spectrogram.hpp"
#include "test_util.hpp"

using namespace f0tk;

TEST_CASE("framing: 16 kHz, 25 ms / 5 ms gives 400-sample frames, 80-sample hop") {
  FramingConfig cfg;
  CHECK(frame_length_samples(cfg, 16000) == 400);
  CHECK(hop_samples(cfg, 16000) == 80);
}

TEST_CASE("framing: 1 s signal without trims yields 196 full frames") {
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::Ones(16000);
  FrameSet fs = frame_signal(w, cfg);
  CHECK(fs.frames.rows() == 196);  // floor((16000-400)/80) + 1
  CHECK(fs.frames.cols() == 400);
  CHECK(fs.offset_s == doctest::Approx(0.0));
  CHECK_FALSE(fs.trim_warning);
}

TEST_CASE("framing: trims beyond the frame count give an empty set with a warning") {
  FramingConfig cfg;  // default trims 400 + 200
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::Zero(16000);  // 196 frames before trimming
  FrameSet fs = frame_signal(w, cfg);
  CHECK(fs.frames.rows() == 0);
  CHECK(fs.trim_warning);
}

TEST_CASE("framing: head trim shifts the time offset") {
  FramingConfig cfg;
  cfg.head_trim_frames = 400;
  cfg.tail_trim_frames = 200;
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::Zero(4 * 16000);
  FrameSet fs = frame_signal(w, cfg);
  // floor((64000-400)/80)+1 = 796 frames, minus 600 trimmed.
  CHECK(fs.frames.rows() == 196);
  CHECK(fs.offset_s == doctest::Approx(400 * 0.005));
}

TEST_CASE("framing: frame i starts at sample i*hop") {
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::LinSpaced(1000, 0.0, 999.0);
  FrameSet fs = frame_signal(w, cfg);
  for (long i = 0; i < fs.frames.rows(); ++i) {
    CHECK(fs.frames(i, 0) == doctest::Approx(80.0 * i));
    CHECK(fs.frames(i, 399) == doctest::Approx(80.0 * i + 399.0));
  }
}

TEST_CASE("windows: periodic hann/hamming shape, rect is all ones") {
  // Periodic (DFT-even) convention: w[n] = a - (1-a) cos(2 pi n / N).
  Vector hann = make_window(WindowKind::hann, 400);
  CHECK(hann[0] == doctest::Approx(0.0));
  CHECK(hann[200] == doctest::Approx(1.0));  // n = N/2
  for (int n = 1; n < 400; ++n) CHECK(hann[n] == doctest::Approx(hann[400 - n]));
  CHECK(hann.sum() == doctest::Approx(200.0));  // mean of hann is exactly 1/2

  Vector rect = make_window(WindowKind::rect, 64);
  CHECK(rect.minCoeff() == 1.0);
  CHECK(rect.maxCoeff() == 1.0);

  Vector hamm = make_window(WindowKind::hamming, 400);
  CHECK(hamm[0] == doctest::Approx(0.08).epsilon(1e-6));
  CHECK(hamm[200] == doctest::Approx(1.0));
}

TEST_CASE("fft: matches the direct DFT within 1e-9 on length-64 random input") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexVector x(64);
  for (long i = 0; i < 64; ++i) x[i] = {dist(rng), dist(rng)};
  ComplexVector got = fft_radix2(x);
  ComplexVector want = test::naive_dft(x);
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("fft: non-power-of-two length is rejected") {
  ComplexVector x = ComplexVector::Zero(48);
  CHECK_THROWS_AS(fft_radix2(x), ParameterError);
}

TEST_CASE("fft: Parseval's identity holds within 1e-6 relative") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexVector x(256);
  for (long i = 0; i < 256; ++i) x[i] = {dist(rng), dist(rng)};
  ComplexVector X = fft_radix2(x);
  const double time_e = x.cwiseAbs2().sum();
  const double freq_e = X.cwiseAbs2().sum() / 256.0;
  CHECK(freq_e == doctest::Approx(time_e).epsilon(1e-6));
}

TEST_CASE("fft: all-zero frame maps to an all-zero magnitude vector") {
  Vector frame = Vector::Zero(400);
  Vector mag = fft_magnitude(frame, 1024);
  CHECK(mag.size() == 513);
  CHECK(mag.maxCoeff() == 0.0);
}

TEST_CASE("fft: rect-windowed cosine at a bin-center frequency peaks exactly there") {
  // k0 * fs / N with N == frame length == fft size keeps the tone orthogonal
  // to every other bin.
  const int n = 512;
  const int k0 = 20;
  Vector frame(n);
  for (int t = 0; t < n; ++t) frame[t] = std::cos(2.0 * M_PI * k0 * t / n);
  Vector mag = fft_magnitude(frame, n);
  long peak;
  mag.maxCoeff(&peak);
  CHECK(peak == k0);
  // Every bin except k0 is numerically zero.
  mag[k0] = 0.0;
  CHECK(mag.maxCoeff() < 1e-9 * n);
}

TEST_CASE("spectrogram: 220 Hz tone puts every frame's argmax at bin 14") {
  Waveform w = test::make_tone(220.0, 1.0);
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Spectrogram spec = spectrogram(w, cfg, FeatureKind::log_psd);
  CHECK(spec.n_bins() == 513);  // first 513 bins of a 1024-point FFT
  REQUIRE(spec.n_frames() == 196);
  for (long i = 0; i < spec.n_frames(); ++i) {
    long peak;
    spec.frames.row(i).maxCoeff(&peak);
    CHECK(peak == 14);  // round(220 * 1024 / 16000)
  }
  CHECK(spec.bin_hz == doctest::Approx(16000.0 / 1024.0));
}

TEST_CASE("spectrogram: silence comes out as a uniform log floor") {
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples = Vector::Zero(16000);
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Spectrogram spec = spectrogram(w, cfg, FeatureKind::log_psd);
  const double floor_db = 10.0 * std::log10(kLogPsdFloor);
  CHECK(spec.frames.minCoeff() == doctest::Approx(floor_db));
  CHECK(spec.frames.maxCoeff() == doctest::Approx(floor_db));
}

TEST_CASE("spectrogram: psd scaling matches |X|^2 / (fs * sum w^2) on one frame") {
  Waveform w = test::make_tone(200.0, 0.1);
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Spectrogram spec = spectrogram(w, cfg, FeatureKind::psd);

  // Recompute frame 0 by hand.
  Vector win = make_window(cfg.window, 400);
  Vector frame(400);
  for (int t = 0; t < 400; ++t) frame[t] = w.samples[t] * win[t];
  Vector mag = fft_magnitude(frame, 1024);
  Vector want = mag.cwiseAbs2() / (16000.0 * win.squaredNorm());
  CHECK((spec.frames.row(0).transpose() - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spectrogram: fft size below the frame length is a parameter error") {
  Waveform w = test::make_tone(100.0, 0.2);
  FramingConfig cfg;
  cfg.fft_size = 256;  // < 400-sample frames
  CHECK_THROWS_AS(spectrogram(w, cfg, FeatureKind::magnitude), ParameterError);
}

TEST_CASE("spectrogram: dump writes the F0SP header and f32 frames") {
  Waveform w = test::make_tone(150.0, 0.3);
  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  Spectrogram spec = spectrogram(w, cfg, FeatureKind::log_psd);
  test::TempDir tmp("spdump");
  dump_spectrogram(spec, tmp.file("s.f0sp"));

  std::ifstream is(tmp.file("s.f0sp"), std::ios::binary);
  char magic[4];
  is.read(magic, 4);
  CHECK(std::string(magic, 4) == "F0SP");
  CHECK(read_u32(is) == static_cast<uint32_t>(spec.n_frames()));
  CHECK(read_u32(is) == 513);
  CHECK(read_u32(is) == static_cast<uint32_t>(FeatureKind::log_psd));
  const float first = read_f32(is);
  CHECK(first == doctest::Approx(static_cast<float>(spec.frames(0, 0))));
  is.seekg(0, std::ios::end);
  CHECK(is.tellg() == std::streamoff(4 + 12 + 4l * spec.n_frames() * 513));
}
