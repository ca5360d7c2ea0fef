#include <catch_amalgamated.hpp>

#include <harmex/excitation.hpp>
#include <harmex/ltv.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "support.hpp"

using namespace harmex;
using Catch::Approx;

namespace {

// Fully voiced excitation with a slow glide; rich enough (>= 64 harmonics) to
// make every 64-tap frame identifiable.
AudioSignal gliding_excitation(std::size_t n, double from = 100.0, double to = 125.0) {
  SampleF0 f0{std::vector<double>(n), 16000.0};
  for (std::size_t i = 0; i < n; ++i) f0.values[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(n);
  return sine_excitation(f0);
}

LtvFirCoeffs random_coeffs(std::size_t frames, std::size_t taps, std::uint64_t seed) {
  LtvFirCoeffs h{Matrix(frames, taps), 0.010, 16000.0};
  h.taps.data = testing::uniform_vector(frames * taps, seed);
  return h;
}

MelSpectrogram mel_frames(const std::vector<std::vector<double>>& rows) {
  MelSpectrogram mel;
  mel.frames = Matrix(rows.size(), 80);
  for (std::size_t f = 0; f < rows.size(); ++f) std::copy(rows[f].begin(), rows[f].end(), mel.frames.row(f).begin());
  return mel;
}

// Magnitudes of the zeros of sum_t h[t] z^-t.
std::vector<double> zero_magnitudes(std::span<const double> h) {
  std::size_t len = h.size();
  while (len > 1 && h[len - 1] == 0.0) --len;
  const auto order = static_cast<Eigen::Index>(len - 1);
  if (order == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
  for (Eigen::Index j = 0; j < order; ++j) companion(0, j) = -h[static_cast<std::size_t>(j + 1)] / h[0];
  for (Eigen::Index i = 1; i < order; ++i) companion(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < order; ++i) mags.push_back(std::abs(solver.eigenvalues()(i)));
  return mags;
}

double frame_rel_rmse(std::span<const double> ref, std::span<const double> got, std::size_t begin, std::size_t end) {
  double err = 0.0, energy = 0.0;
  for (std::size_t n = begin; n < end; ++n) {
    err += (ref[n] - got[n]) * (ref[n] - got[n]);
    energy += ref[n] * ref[n];
  }
  return std::sqrt(err / energy);
}

}  // namespace

// ---------------------------------------------------------------------------
// apply_ltv

TEST_CASE("delta taps leave the signal untouched", "[ltv]") {
  const auto x = AudioSignal{testing::uniform_vector(1600, 1), 16000.0};
  std::vector<double> delta(64, 0.0);
  delta[0] = 1.0;
  const auto y = apply_ltv(x, constant_coeffs(delta, 10));
  CHECK(y.samples == x.samples);
}

TEST_CASE("constant taps reduce apply_ltv to direct convolution", "[ltv][property]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x = AudioSignal{testing::uniform_vector(16000, 100 + seed), 16000.0};
    const auto taps = testing::uniform_vector(64, 200 + seed);
    const auto y = apply_ltv(x, constant_coeffs(taps, 100));
    const auto ref = testing::direct_convolution(x.samples, taps);
    double worst = 0.0;
    for (std::size_t n = 0; n < ref.size(); ++n) worst = std::max(worst, std::abs(ref[n] - y.samples[n]));
    REQUIRE(worst < 1e-12);
  }
}

TEST_CASE("apply_ltv is linear in the signal", "[ltv][property]") {
  const auto h = random_coeffs(20, 32, 5);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x1 = AudioSignal{testing::uniform_vector(3200, 10 + seed), 16000.0};
    const auto x2 = AudioSignal{testing::uniform_vector(3200, 20 + seed), 16000.0};
    const double a = 0.7 + static_cast<double>(seed), b = -1.3;
    AudioSignal mix{std::vector<double>(3200), 16000.0};
    for (std::size_t i = 0; i < 3200; ++i) mix.samples[i] = a * x1.samples[i] + b * x2.samples[i];
    const auto y = apply_ltv(mix, h);
    const auto y1 = apply_ltv(x1, h);
    const auto y2 = apply_ltv(x2, h);
    for (std::size_t i = 0; i < 3200; ++i) REQUIRE(y.samples[i] == Approx(a * y1.samples[i] + b * y2.samples[i]).margin(1e-12));
  }
}

TEST_CASE("apply_ltv interpolates taps between frame centres", "[ltv]") {
  // Single tap ramping from 1 to 3 across the first hop.
  LtvFirCoeffs h{Matrix(2, 1), 0.010, 16000.0};
  h.taps(0, 0) = 1.0;
  h.taps(1, 0) = 3.0;
  const auto y = apply_ltv(AudioSignal{std::vector<double>(320, 1.0), 16000.0}, h);
  CHECK(y.samples[0] == 1.0);
  CHECK(y.samples[80] == Approx(2.0));
  CHECK(y.samples[160] == 3.0);
  CHECK(y.samples[319] == 3.0);
}

TEST_CASE("apply_ltv contract errors", "[ltv]") {
  const auto x = AudioSignal{std::vector<double>(1600, 0.1), 16000.0};
  auto h = random_coeffs(10, 8, 1);
  h.sample_rate = 22050.0;
  CHECK_THROWS_AS(apply_ltv(x, h), Error);
  try {
    apply_ltv(x, random_coeffs(12, 8, 1));
    FAIL("expected a length-mismatch error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::LengthMismatch);
  }
  CHECK_NOTHROW(apply_ltv(x, random_coeffs(11, 8, 1)));
  CHECK_NOTHROW(apply_ltv(x, random_coeffs(9, 8, 1)));
  CHECK_THROWS_AS(apply_ltv(AudioSignal{}, random_coeffs(1, 8, 1)), Error);
}

// ---------------------------------------------------------------------------
// frequency_response

TEST_CASE("frequency response of delta and two-tap averager", "[ltv]") {
  const std::vector<double> delta = {1.0, 0.0, 0.0};
  for (double db : frequency_response(constant_coeffs(delta, 1), 0, 64)) REQUIRE(db == Approx(0.0).margin(1e-12));

  const std::vector<double> avg = {0.5, 0.5};
  const auto r = frequency_response(constant_coeffs(avg, 1), 0, 64);
  REQUIRE(r.size() == 33);
  CHECK(r.front() == Approx(0.0).margin(1e-12));
  CHECK(r.back() == -120.0);
  // |cos(pi k / 64)| elsewhere.
  CHECK(r[16] == Approx(20.0 * std::log10(std::cos(std::numbers::pi / 4.0))).margin(1e-9));
}

TEST_CASE("frequency response errors", "[ltv]") {
  const auto h = random_coeffs(4, 16, 3);
  try {
    frequency_response(h, 4, 64);
    FAIL("expected an index error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Index);
  }
  CHECK_THROWS_AS(frequency_response(h, 0, 8), Error);
}

// ---------------------------------------------------------------------------
// estimate_coeffs_from_mel

TEST_CASE("flat mel frame gives a flat response", "[ltv][estimate]") {
  for (double level : {0.0, 2.0, -3.0}) {
    const auto h = estimate_coeffs_from_mel(mel_frames({std::vector<double>(80, level)}));
    REQUIRE(h.n_taps() == 64);
    REQUIRE(h.n_frames() == 1);
    CHECK(h.hop_seconds == Approx(0.01));
    const double expected_db = 10.0 * std::log10(std::exp(level));
    const auto r = frequency_response(h, 0, 1024);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const double hz = 16000.0 * static_cast<double>(k) / 1024.0;
      if (hz < 100.0 || hz > 7000.0) continue;
      REQUIRE(std::abs(r[k] - expected_db) <= 3.0);
    }
  }
}

TEST_CASE("silent mel frame stays near the floor", "[ltv][estimate]") {
  const std::vector<double> silence(80, std::log(1e-5));
  for (double floor_db : {-50.0, -40.0}) {
    const auto h = estimate_coeffs_from_mel(mel_frames({silence}), {64, floor_db});
    for (double db : frequency_response(h, 0, 1024)) REQUIRE(db <= floor_db + 6.0);
  }
}

TEST_CASE("single active band puts the response peak inside its support", "[ltv][estimate]") {
  const MelFilterbank bank(80, 0.0, 8000.0, 16000.0);
  for (std::size_t band : {10u, 30u, 50u, 70u}) {
    std::vector<double> frame(80, std::log(1e-5));
    frame[band] = 3.0;
    const auto h = estimate_coeffs_from_mel(mel_frames({frame}));
    const auto r = frequency_response(h, 0, 4096);
    const auto peak = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    const double hz = 16000.0 * static_cast<double>(peak) / 4096.0;
    CHECK(hz > bank.lower_hz(band));
    CHECK(hz < bank.upper_hz(band));
  }
}

TEST_CASE("estimated response follows a smooth envelope", "[ltv][estimate]") {
  const MelFilterbank bank(80, 0.0, 8000.0, 16000.0);
  std::vector<double> envelope_db(80), frame(80);
  for (std::size_t m = 0; m < 80; ++m) {
    const double c = bank.center_hz(m);
    envelope_db[m] = 20.0 * std::exp(-std::pow((c - 700.0) / 300.0, 2)) +
                     14.0 * std::exp(-std::pow((c - 1800.0) / 400.0, 2)) - 10.0 * c / 8000.0;
    frame[m] = envelope_db[m] * std::numbers::ln10 / 10.0;
  }
  const auto h = estimate_coeffs_from_mel(mel_frames({frame}));
  const auto r = frequency_response(h, 0, 1024);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double hz = 16000.0 * static_cast<double>(k) / 1024.0;
    if (hz < 100.0 || hz > 7000.0) continue;
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < 80; ++m) {
      num += bank.weight(m, hz) * envelope_db[m];
      den += bank.weight(m, hz);
    }
    REQUIRE(std::abs(r[k] - num / den) <= 3.0);
  }
}

TEST_CASE("estimated filters are minimum phase", "[ltv][estimate][property]") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> level(-8.0, 4.0);
  std::vector<std::vector<double>> rows;
  for (int f = 0; f < 12; ++f) {
    // Random smooth envelope: a few random anchors, linearly joined.
    std::vector<double> anchors(6);
    for (auto& a : anchors) a = level(rng);
    std::vector<double> row(80);
    for (std::size_t m = 0; m < 80; ++m) {
      const double pos = static_cast<double>(m) / 79.0 * 5.0;
      const auto i = std::min<std::size_t>(4, static_cast<std::size_t>(pos));
      row[m] = anchors[i] + (pos - static_cast<double>(i)) * (anchors[i + 1] - anchors[i]);
    }
    rows.push_back(row);
  }
  rows.push_back(std::vector<double>(80, std::log(1e-5)));
  std::vector<double> spike(80, std::log(1e-5));
  spike[40] = 4.0;
  rows.push_back(spike);

  for (std::size_t n_taps : {16u, 32u, 64u}) {
    const auto h = estimate_coeffs_from_mel(mel_frames(rows), {n_taps, -50.0});
    for (std::size_t f = 0; f < h.n_frames(); ++f)
      for (double mag : zero_magnitudes(h.taps.row(f))) REQUIRE(mag <= 1.0 + 1e-6);
  }
}

TEST_CASE("estimator contract errors", "[ltv][estimate]") {
  auto mel = mel_frames({std::vector<double>(80, 0.0)});
  CHECK_THROWS_AS(estimate_coeffs_from_mel(mel, {2049, -50.0}), Error);
  CHECK_THROWS_AS(estimate_coeffs_from_mel(mel, {0, -50.0}), Error);
  mel.stft.fft_size = 64;
  mel.stft.win_size = 64;
  mel.stft.hop_size = 32;
  try {
    estimate_coeffs_from_mel(mel, {32, -50.0});
    FAIL("expected a degenerate filterbank error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Config);
  }
}

// ---------------------------------------------------------------------------
// fit_coeffs_least_squares

TEST_CASE("fitting the excitation to itself recovers a delta", "[ltv][fit]") {
  const auto x = gliding_excitation(8000);
  for (auto mode : {FitMode::Joint, FitMode::PerFrame}) {
    FitConfig cfg;
    cfg.mode = mode;
    const auto h = fit_coeffs_least_squares(x, x, cfg);
    REQUIRE(h.n_frames() == 50);
    for (std::size_t f = 0; f < h.n_frames(); ++f) {
      REQUIRE(std::abs(h.taps(f, 0) - 1.0) < 1e-3);
      double tail = 0.0;
      for (std::size_t t = 1; t < h.n_taps(); ++t) tail += h.taps(f, t) * h.taps(f, t);
      REQUIRE(tail < 1e-6);
    }
  }
}

TEST_CASE("construct-then-recover with random LTV taps", "[ltv][fit]") {
  const auto x = gliding_excitation(16000);
  const auto known = random_coeffs(100, 64, 99);
  const auto target = apply_ltv(x, known);
  FitConfig cfg;
  cfg.ridge_lambda = 0.0;
  const auto fitted = fit_coeffs_least_squares(x, target, cfg);
  const auto refit = apply_ltv(x, fitted);
  for (std::size_t f = 1; f + 1 < 100; ++f)
    REQUIRE(frame_rel_rmse(target.samples, refit.samples, f * 160 - 80, f * 160 + 80) < 1e-6);
}

TEST_CASE("joint fit residual is orthogonal to the interpolated regressors", "[ltv][fit][property]") {
  const std::size_t n = 4800, hop = 160, taps = 16;
  const auto x = gliding_excitation(n, 150.0, 170.0);
  const auto target = AudioSignal{testing::uniform_vector(n, 8), 16000.0};
  FitConfig cfg;
  cfg.n_taps = taps;
  cfg.ridge_lambda = 0.0;
  const auto h = fit_coeffs_least_squares(x, target, cfg);
  const auto refit = apply_ltv(x, h);
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = target.samples[i] - refit.samples[i];

  const std::size_t frames = h.n_frames();
  double worst = 0.0;
  for (std::size_t f = 0; f < frames; ++f)
    for (std::size_t t = 0; t < taps; ++t) {
      // Regressor for tap t of frame f: its interpolation weight times x[n - t].
      double dot = 0.0, g2 = 0.0, r2 = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        const std::size_t left = s / hop;
        double a = 0.0;
        if (left + 1 >= frames) a = f == frames - 1 ? 1.0 : 0.0;
        else if (f == left) a = 1.0 - static_cast<double>(s - left * hop) / hop;
        else if (f == left + 1) a = static_cast<double>(s - left * hop) / hop;
        const double g = s >= t ? a * x.samples[s - t] : 0.0;
        dot += g * resid[s];
        g2 += g * g;
        r2 += resid[s] * resid[s];
      }
      if (g2 > 0.0) worst = std::max(worst, std::abs(dot) / std::sqrt(g2 * r2));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("per-frame fit is optimal and never worse than the raw excitation", "[ltv][fit][property]") {
  const std::size_t n = 4000, hop = 160;
  const auto x = gliding_excitation(n, 110.0, 140.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    // Target: excitation through a random filter plus noise, so it is not exactly reachable.
    const auto noise = testing::uniform_vector(n, 40 + seed, -0.05, 0.05);
    auto target = apply_ltv(x, random_coeffs(25, 24, 60 + seed));
    for (std::size_t i = 0; i < n; ++i) target.samples[i] += noise[i];

    FitConfig cfg;
    cfg.ridge_lambda = 0.0;
    cfg.mode = FitMode::PerFrame;
    cfg.n_taps = 48;
    const auto h = fit_coeffs_least_squares(x, target, cfg);
    for (std::size_t f = 0; f < h.n_frames(); ++f) {
      const std::size_t begin = f == 0 ? 0 : f * hop - hop / 2;
      const std::size_t end = std::min(n, f * hop + hop / 2);
      const auto taps = h.taps.row(f);
      std::vector<double> resid;
      double err_fit = 0.0, err_raw = 0.0;
      for (std::size_t s = begin; s < end; ++s) {
        double y = 0.0;
        for (std::size_t t = 0; t < taps.size() && t <= s; ++t) y += taps[t] * x.samples[s - t];
        resid.push_back(target.samples[s] - y);
        err_fit += resid.back() * resid.back();
        err_raw += (target.samples[s] - x.samples[s]) * (target.samples[s] - x.samples[s]);
      }
      const double len = static_cast<double>(end - begin);
      REQUIRE(std::sqrt(err_fit / len) <= std::sqrt(err_raw / len) + 1e-9);
      for (std::size_t t = 0; t < taps.size(); ++t) {
        double dot = 0.0, g2 = 0.0;
        for (std::size_t s = begin; s < end; ++s) {
          const double g = s >= t ? x.samples[s - t] : 0.0;
          dot += g * resid[s - begin];
          g2 += g * g;
        }
        if (g2 > 0.0) REQUIRE(std::abs(dot) / std::sqrt(g2 * err_fit) < 1e-8);
      }
    }
  }
}

TEST_CASE("silent excitation frames get zero taps", "[ltv][fit]") {
  auto x = gliding_excitation(4800);
  // Frames 10..19 own [1520, 3120); leave a wider silent stretch so the joint
  // fit's interpolation reach is silent too.
  for (std::size_t i = 1200; i < 3500; ++i) x.samples[i] = 0.0;
  const auto target = AudioSignal{testing::uniform_vector(4800, 2), 16000.0};
  for (auto mode : {FitMode::Joint, FitMode::PerFrame}) {
    FitConfig cfg;
    cfg.mode = mode;
    cfg.ridge_lambda = mode == FitMode::Joint ? 1e-6 : 0.0;
    const auto h = fit_coeffs_least_squares(x, target, cfg);
    for (std::size_t f = 10; f < 20; ++f)
      for (double v : h.taps.row(f)) REQUIRE(v == 0.0);
  }
}

TEST_CASE("fit contract errors", "[ltv][fit]") {
  const auto x = gliding_excitation(1600);
  auto short_target = AudioSignal{std::vector<double>(1599, 0.0), 16000.0};
  try {
    fit_coeffs_least_squares(x, short_target);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Config);
  }
  auto other_rate = x;
  other_rate.sample_rate = 8000.0;
  CHECK_THROWS_AS(fit_coeffs_least_squares(x, other_rate), Error);
  auto bad = x;
  bad.samples[10] = std::nan("");
  try {
    fit_coeffs_least_squares(x, bad);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Domain);
  }
  FitConfig cfg;
  cfg.ridge_lambda = -1.0;
  CHECK_THROWS_AS(fit_coeffs_least_squares(x, x, cfg), Error);
}
