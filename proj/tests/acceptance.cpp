// tests/acceptance.cpp

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

// Release gate: nine end-to-end checks, one pass/fail line each.  Exits
// nonzero when any criterion fails.  Criterion 7 trains an RNN regressor on
// a generated corpus and takes a few minutes; everything else is seconds.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "f0tk/contour_io.hpp"
#include "f0tk/experiment.hpp"
#include "f0tk/fft.hpp"
#include "f0tk/hmm.hpp"
#include "f0tk/manifest.hpp"
#include "f0tk/metrics.hpp"
#include "f0tk/model_io.hpp"
#include "f0tk/network.hpp"
#include "f0tk/noise.hpp"
#include "f0tk/quantizer.hpp"
#include "f0tk/spectrogram.hpp"
#include "f0tk/synth.hpp"
#include "f0tk/tracker.hpp"
#include "f0tk/yin.hpp"
#include "test_util.hpp"

using namespace f0tk;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Failure(msg);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix random_matrix(long r, long c, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  Matrix m(r, c);
  for (long j = 0; j < c; ++j)
    for (long i = 0; i < r; ++i) m(i, j) = dist(rng);
  return m;
}

// ---------------------------------------------------------------- criterion 1

// Worst relative disagreement between analytic and central-difference
// gradients over every trainable matrix of a feed-forward net.
double dnn_fd_worst(FeedForwardNet* net, const DnnBatch& batch) {
  std::mt19937_64 grad_rng(7);
  DnnGradients g;
  dnn_gradients(*net, batch, 0.0, grad_rng, &g);
  auto loss = [&] { return dnn_training_loss(*net, batch); };
  double worst = 0.0;
  for (size_t l = 0; l < net->layers.size(); ++l) {
    worst = std::max(worst, test::max_rel_err(g.dW[l], test::fd_grad(&net->layers[l].W, loss)));
  }
  for (size_t l = 0; l < net->batch_norms.size(); ++l) {
    worst = std::max(
        worst, test::max_rel_err(g.dgamma[l], test::fd_grad(&net->batch_norms[l].gamma, loss)));
    worst = std::max(
        worst, test::max_rel_err(g.dbeta[l], test::fd_grad(&net->batch_norms[l].beta, loss)));
  }
  return worst;
}

double rnn_fd_worst(RecurrentNet* net, const RnnBatch& batch) {
  RnnGradients g;
  rnn_gradients(*net, batch, &g);
  auto loss = [&] {
    RnnGradients scratch;
    return rnn_gradients(*net, batch, &scratch);
  };
  double worst = 0.0;
  for (size_t l = 0; l < net->layers.size(); ++l) {
    worst = std::max(worst, test::max_rel_err(g.dW[l], test::fd_grad(&net->layers[l].W, loss)));
    worst = std::max(worst, test::max_rel_err(g.dH[l], test::fd_grad(&net->layers[l].H, loss)));
  }
  worst = std::max(worst, test::max_rel_err(g.dW_head, test::fd_grad(&net->head.W, loss)));
  return worst;
}

std::string check_gradients() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260823);
  double worst = 0.0;

  {  // dense relu + MSE; jittered biases keep units off the relu kink
    FeedForwardNet net = make_dnn(5, {4, 3}, 1, Activation::relu, Activation::identity,
                                  false, rng);
    for (DenseLayer& l : net.layers) l.W.col(0) = random_matrix(l.W.rows(), 1, rng, 0.3);
    DnnBatch b;
    b.inputs = random_matrix(6, 5, rng, 1.0);
    b.targets_f0 = random_matrix(6, 1, rng, 1.0);
    worst = std::max(worst, dnn_fd_worst(&net, b));
  }
  {  // tanh + batch norm + MSE
    FeedForwardNet net = make_dnn(4, {5, 4}, 1, Activation::tanh, Activation::identity,
                                  true, rng);
    DnnBatch b;
    b.inputs = random_matrix(6, 4, rng, 1.0);
    b.targets_f0 = random_matrix(6, 1, rng, 1.0);
    worst = std::max(worst, dnn_fd_worst(&net, b));
  }
  {  // softmax + cross-entropy + batch norm
    FeedForwardNet net = make_dnn(4, {5}, 5, Activation::tanh, Activation::softmax, true, rng);
    DnnBatch b;
    b.inputs = random_matrix(6, 4, rng, 1.0);
    b.target_states = Eigen::VectorXi(6);
    b.target_states << 0, 3, 1, 4, 2, 0;
    worst = std::max(worst, dnn_fd_worst(&net, b));
  }
  {  // recurrent stack, full BPTT over 3 steps
    RecurrentNet net = make_rnn(3, {4, 4, 4}, 1, Activation::identity, rng);
    RnnBatch b;
    for (int t = 0; t < 3; ++t) b.steps.push_back(random_matrix(5, 3, rng, 1.0));
    b.targets_f0 = random_matrix(5, 1, rng, 1.0);
    worst = std::max(worst, rnn_fd_worst(&net, b));
  }

  const double secs = seconds_since(t0);
  require(worst <= 1e-4, fmt("worst relative gradient error %.3g exceeds 1e-4", worst));
  require(secs < 60.0, fmt("gradient checks took %.1f s (budget 60 s)", secs));
  return fmt("worst rel err %.2g in %.1f s", worst, secs);
}

// ------------------------------------------------------------ criteria 2 + 3

struct HmmInstance {
  Matrix posteriors;
  HmmParams hmm;
};

HmmInstance random_instance(int states, int frames, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  HmmInstance inst;
  inst.posteriors.resize(frames, states);
  for (long i = 0; i < frames; ++i) {
    for (int s = 0; s < states; ++s) inst.posteriors(i, s) = u(rng);
    inst.posteriors.row(i) /= inst.posteriors.row(i).sum();
  }
  Vector prior(states);
  for (int s = 0; s < states; ++s) prior[s] = u(rng);
  inst.hmm.log_prior = (prior / prior.sum()).array().log();
  Matrix trans(states, states);
  for (int s = 0; s < states; ++s) {
    for (int v = 0; v < states; ++v) trans(s, v) = u(rng);
    trans.row(s) /= trans.row(s).sum();
  }
  inst.hmm.log_trans = trans.array().log();
  return inst;
}

// Score of one state path under the decoder's emission scaling rule.
double path_score(const Matrix& posteriors, const HmmParams& hmm, const std::vector<int>& path) {
  const double log_floor = std::log(kPriorFloor);
  double score = 0.0;
  for (size_t i = 0; i < path.size(); ++i) {
    score += std::log(posteriors(static_cast<long>(i), path[i])) -
             std::max(hmm.log_prior[path[i]], log_floor);
    if (i > 0) score += hmm.log_trans(path[i - 1], path[i]);
  }
  return score;
}

std::string check_viterbi_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> su(2, 4), fu(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    HmmInstance inst = random_instance(su(rng), fu(rng), rng);
    const std::vector<int> got = viterbi_decode(inst.posteriors, inst.hmm);
    auto [want, best] = test::brute_force_viterbi(inst.posteriors, inst.hmm);
    require(got == want, fmt("trial %d: decoded path differs from exhaustive search", trial));
    const double score = path_score(inst.posteriors, inst.hmm, got);
    require(std::abs(score - best) <= 1e-9,
            fmt("trial %d: path score %.12g vs oracle %.12g", trial, score, best));
  }
  const double secs = seconds_since(t0);
  require(secs < 60.0, fmt("oracle comparison took %.1f s (budget 60 s)", secs));
  return fmt("500 instances in %.1f s", secs);
}

std::string check_prior_scaling() {
  std::mt19937_64 rng(4711);
  std::uniform_int_distribution<int> su(2, 5), fu(2, 8);
  const double scales[] = {1e-3, 0.37, 1000.0};
  for (int trial = 0; trial < 100; ++trial) {
    HmmInstance inst = random_instance(su(rng), fu(rng), rng);
    const std::vector<int> base = viterbi_decode(inst.posteriors, inst.hmm);
    for (double c : scales) {
      HmmParams scaled = inst.hmm;
      scaled.log_prior.array() += std::log(c);
      require(viterbi_decode(inst.posteriors, scaled) == base,
              fmt("trial %d: scaling priors by %g changed the path", trial, c));
    }
  }
  return "100 instances x 3 scales";
}

// ---------------------------------------------------------------- criterion 4

F0Contour contour_of(const std::vector<double>& f0s) {
  F0Contour c;
  c.hop_s = 0.005;
  for (size_t i = 0; i < f0s.size(); ++i) {
    c.frames.push_back({static_cast<long>(i), f0s[i], f0s[i] > 0.0});
  }
  return c;
}

std::string check_metrics() {
  const EvalConfig cfg;
  {  // 100 -> 106 Hz: period error 0.566 ms, inside the 0.625 ms box
    UtteranceScore s = score_utterance(contour_of({106.0}), contour_of({100.0}), cfg);
    require(s.n_voiced == 1 && s.n_gpe == 0 && s.n_fpe == 1,
            "106 Hz vs 100 Hz must be a fine error");
    require(std::abs(s.fpe_sum_hz - 6.0) <= 1e-12, "fine error magnitude must be 6 Hz");
  }
  {  // 100 -> 107 Hz: period error 0.654 ms, past the threshold
    UtteranceScore s = score_utterance(contour_of({107.0}), contour_of({100.0}), cfg);
    require(s.n_voiced == 1 && s.n_gpe == 1 && s.n_fpe == 0,
            "107 Hz vs 100 Hz must be a gross error");
  }
  {  // errors {1,3,5} Hz: population sigma = sqrt(8/3)
    UtteranceScore s = score_utterance(contour_of({101.0, 103.0, 105.0}),
                                       contour_of({100.0, 100.0, 100.0}), cfg);
    require(s.n_fpe == 3, "all three frames must be fine errors");
    require(std::abs(s.fpe_std_hz() - std::sqrt(8.0 / 3.0)) <= 1e-9,
            fmt("sigma_FPE %.12f != sqrt(8/3)", s.fpe_std_hz()));
  }
  return "0.625 ms rule and sigma definition exact";
}

// ---------------------------------------------------------------- criterion 5

std::string check_snr_mixer() {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> f0(80.0, 300.0);
  const double snrs[] = {-10.0, -5.0, 0.0, 5.0, 10.0};
  double worst = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    const Waveform speech = test::make_tone(f0(rng), 0.5);
    const Waveform noise = test::make_white(2.0, 16000, 0.1, rng());
    for (double target : snrs) {
      const Waveform mixed = mix_noise_at_snr(speech, {noise, target}, rng());
      Waveform component;
      component.sample_rate_hz = speech.sample_rate_hz;
      component.samples = mixed.samples - speech.samples;
      const double got = measure_snr(speech, component);
      worst = std::max(worst, std::abs(got - target));
      require(std::abs(got - target) < 0.1,
              fmt("pair %d at %+g dB: measured %.3f dB", pair, target, got));
    }
  }
  return fmt("20 pairs x 5 SNRs, worst |error| %.2g dB", worst);
}

// ---------------------------------------------------------------- criterion 6

std::string check_dsp() {
  {  // radix-2 against the direct O(N^2) sum
    std::mt19937_64 rng(64);
    ComplexVector x(64);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (long i = 0; i < 64; ++i) x[i] = {dist(rng), dist(rng)};
    const ComplexVector got = fft_radix2(x);
    const ComplexVector want = test::naive_dft(x);
    const double err = (got - want).cwiseAbs().maxCoeff();
    require(err <= 1e-9, fmt("FFT vs DFT max |diff| %.3g", err));

    // Parseval: sum |x|^2 == (1/N) sum |X|^2.
    const double et = x.squaredNorm();
    const double ef = got.squaredNorm() / 64.0;
    require(std::abs(et - ef) <= 1e-6 * et, fmt("Parseval %.12g vs %.12g", et, ef));
  }

  FramingConfig cfg;
  cfg.head_trim_frames = 0;
  cfg.tail_trim_frames = 0;
  require(frame_length_samples(cfg, 16000) == 400, "25 ms at 16 kHz must be 400 samples");
  require(hop_samples(cfg, 16000) == 80, "5 ms at 16 kHz must be 80 samples");

  // 220 Hz sits in bin round(220 / 15.625) = 14 of the 1024-point transform.
  const Spectrogram spec = spectrogram(test::make_tone(220.0, 1.0), cfg, FeatureKind::log_psd);
  require(spec.n_bins() == 513, fmt("%ld bins != 513", spec.n_bins()));
  for (long i = 0; i < spec.n_frames(); ++i) {
    long peak = 0;
    spec.frames.row(i).maxCoeff(&peak);
    require(peak == 14, fmt("frame %ld: tone peak in bin %ld, want 14", i, peak));
  }
  return fmt("FFT/DFT, Parseval, 400/80/513 framing, tone peak ok");
}

// ---------------------------------------------------------------- criterion 7

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

std::string check_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  test::TempDir tmp("acceptance");

  SynthSpec spec;
  spec.n_utts = 250;
  spec.duration_s = 1.2;
  spec.f0_min_hz = 80.0;
  spec.f0_max_hz = 300.0;
  spec.kind = "mixed";
  spec.seed = 4242;
  spec.n_harmonics = 8;
  spec.n_train = 200;
  spec.n_cv = 0;
  spec.n_test = 50;
  cmd_synth(spec, tmp.file("corpus"));

  // Wrap the corpus fragment with the experiment settings: white noise at
  // 10 dB, a 3x128 recurrent regressor, 20 epochs with stepped decay.
  const std::string fragment = test::read_text(tmp.file("corpus") + "/corpus.json");
  const std::string manifest =
      "{\n"
      "  \"out_dir\": \"" + tmp.file("out") + "\",\n"
      "  \"seed\": 4242,\n"
      "  \"snrs_db\": [10],\n"
      "  \"trackers\": [\"rnn_reg\"],\n"
      "  \"train_on_clean\": false,\n"
      "  \"framing\": {\"head_trim_frames\": 0, \"tail_trim_frames\": 0},\n"
      "  \"training\": {\"epochs\": 20, \"learning_rate\": 0.02, \"batch_size\": 200,\n"
      "                 \"hidden_units\": [128, 128, 128], \"dropout_rate\": 0.0,\n"
      "                 \"lr_schedule\": \"step\", \"lr_step_epochs\": 8, \"lr_decay\": 0.5},\n" +
      fragment.substr(fragment.find('{') + 1);
  test::write_text(tmp.file("m.json"), manifest);
  const ExperimentManifest m = load_manifest(tmp.file("m.json"));

  cmd_mix(m, 1);
  cmd_train(m, TrackerKind::rnn_reg, 1);
  cmd_track_grid(m, {}, 1);
  cmd_eval(m, "", 1);

  // Pooled row for the one condition in the grid.
  std::ifstream report(tmp.file("out") + "/report.csv");
  require(report.good(), "report.csv missing");
  std::string line;
  double gpe = -1.0, sigma = -1.0;
  while (std::getline(report, line)) {
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() >= 8 && cells[0] == "rnn_reg" && cells[1] == "white") {
      gpe = std::stod(cells[5]);
      sigma = std::stod(cells[7]);
    }
  }
  require(gpe >= 0.0, "no rnn_reg/white row in report.csv");

  // The classifier cannot beat its own grid: its error floor is the mean
  // half-bin width of the 68-state quantizer over the test pitches.  The
  // regressor has to land strictly below that.
  const Quantizer q;
  double width_sum = 0.0;
  long width_n = 0;
  for (const std::string& id : m.dataset.test) {
    const F0Contour truth = load_f0_ground_truth(
        m.dataset.truth_dir + "/" + id + m.dataset.truth_ext, m.dataset.truth_adapter,
        m.framing.hop_s);
    for (const F0Frame& f : truth.frames) {
      if (!f.voiced) continue;
      width_sum += half_bin_width_at(q, f.f0_hz);
      ++width_n;
    }
  }
  require(width_n > 0, "test split has no voiced frames");
  const double floor = width_sum / static_cast<double>(width_n);
  const double minutes = seconds_since(t0) / 60.0;

  require(gpe < 0.10, fmt("held-out GPE %.4f not under 10%%", gpe));
  require(sigma < 8.0, fmt("sigma_FPE %.3f Hz not under 8 Hz", sigma));
  require(sigma < floor,
          fmt("sigma_FPE %.3f Hz not under the %.3f Hz quantization floor", sigma, floor));
  require(minutes < 30.0, fmt("experiment took %.1f min (budget 30 min)", minutes));
  return fmt("GPE %.2f%%, sigma_FPE %.2f Hz < %.2f Hz floor, %.1f min",
             100.0 * gpe, sigma, floor, minutes);
}

// ---------------------------------------------------------------- criterion 8

std::string check_yin() {
  YinConfig cfg;
  cfg.framing.head_trim_frames = 0;
  cfg.framing.tail_trim_frames = 0;

  const F0Contour tone = yin_track(test::make_tone(220.0, 1.0), cfg);
  long voiced = 0, close = 0;
  for (const F0Frame& f : tone.frames) {
    if (!f.voiced) continue;
    ++voiced;
    if (std::abs(f.f0_hz - 220.0) <= 2.2) ++close;
  }
  require(voiced > 0, "no voiced frames on a clean tone");
  const double within = static_cast<double>(close) / static_cast<double>(voiced);
  require(within >= 0.99, fmt("only %.1f%% of voiced frames within 1%%", 100.0 * within));

  const F0Contour noise = yin_track(test::make_white(1.0), cfg);
  long unvoiced = 0;
  for (const F0Frame& f : noise.frames) unvoiced += f.voiced ? 0 : 1;
  const double rate = static_cast<double>(unvoiced) / static_cast<double>(noise.size());
  require(rate >= 0.80, fmt("only %.1f%% of white-noise frames unvoiced", 100.0 * rate));
  return fmt("tone %.1f%% within 1%%, noise %.0f%% unvoiced", 100.0 * within, 100.0 * rate);
}

// ---------------------------------------------------------------- criterion 9

std::string check_persistence() {
  test::TempDir tmp("persist");

  // Small regressor over a handful of constant-pitch utterances.
  std::vector<TrainUtt> train_set;
  for (int i = 0; i < 6; ++i) {
    F0Contour truth;
    truth.hop_s = 0.005;
    const double f0 = 120.0 + 25.0 * i;
    for (long t = 0; t < 120; ++t) truth.frames.push_back({t, f0, true});
    TrainUtt utt;
    utt.truth = truth;
    utt.wave = synth_harmonic(truth, 4, 16000, 0.2);
    train_set.push_back(std::move(utt));
  }

  TrackerConfig cfg;
  cfg.kind = TrackerKind::dnn_reg;
  cfg.framing.head_trim_frames = 0;
  cfg.framing.tail_trim_frames = 0;
  cfg.context.p = 2;
  cfg.hidden_units = {16, 16};
  cfg.train.epochs = 2;
  cfg.train.learning_rate = 1e-3;
  cfg.train.batch_size = 64;
  cfg.train.dropout_rate = 0.0;
  cfg.train.seed = 99;
  const TrackerModel model = train_tracker(cfg, train_set, {}, nullptr, 1);

  save_model(model, tmp.file("model.f0tk"));
  const TrackerModel loaded = load_model(tmp.file("model.f0tk"));

  const F0Contour a = track(model, train_set[0].wave);
  const F0Contour b = track(loaded, train_set[0].wave);
  require(a.size() == b.size(), "frame counts differ after reload");
  for (long i = 0; i < a.size(); ++i) {
    require(std::memcmp(&a.frames[i].f0_hz, &b.frames[i].f0_hz, sizeof(double)) == 0 &&
                a.frames[i].voiced == b.frames[i].voiced,
            fmt("frame %ld differs after reload", i));
  }
  return fmt("%ld frames bit-identical after save/load", a.size());
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gradient correctness", check_gradients},
      {2, "Viterbi oracle equivalence", check_viterbi_oracle},
      {3, "prior-scaling argmax invariance", check_prior_scaling},
      {4, "metric fidelity", check_metrics},
      {5, "SNR mixer", check_snr_mixer},
      {6, "DSP", check_dsp},
      {7, "synthetic end-to-end", check_end_to_end},
      {8, "YIN baseline sanity", check_yin},
      {9, "persistence", check_persistence},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      const std::string detail = c.run();
      std::printf("[PASS] criterion %d (%s): %s\n", c.id, c.name, detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %d (%s): %s\n", c.id, c.name, e.what());
    }
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
