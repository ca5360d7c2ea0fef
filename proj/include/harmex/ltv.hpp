#ifndef HARMEX_LTV_HPP
#define HARMEX_LTV_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "harmex/error.hpp"
#include "harmex/fft.hpp"
#include "harmex/min_phase.hpp"
#include "harmex/spectral.hpp"
#include "harmex/types.hpp"

namespace harmex {

/// Time-varying FIR: one tap vector per frame, frame f centred on sample f * hop.
struct LtvFirCoeffs {
  Matrix taps;  // n_frames x n_taps
  double hop_seconds = kDefaultHopSeconds;
  double sample_rate = kDefaultSampleRate;

  std::size_t n_frames() const noexcept { return taps.rows; }
  std::size_t n_taps() const noexcept { return taps.cols; }
};

inline void validate(const LtvFirCoeffs& h) {
  if (h.n_taps() == 0) detail::fail(ErrorCategory::Config, "ltv filter needs at least one tap");
  if (!(h.hop_seconds > 0.0)) detail::fail(ErrorCategory::Config, "ltv hop must be positive");
  detail::validate_sample_rate(h.sample_rate);
  if (!detail::all_finite(h.taps.data))
    detail::fail(ErrorCategory::Domain, "ltv coefficients must be finite");
}

/// Same tap vector on every frame.
inline LtvFirCoeffs constant_coeffs(std::span<const double> taps, std::size_t n_frames,
                                    double hop_seconds = kDefaultHopSeconds,
                                    double sample_rate = kDefaultSampleRate) {
  LtvFirCoeffs h{Matrix(n_frames, taps.size()), hop_seconds, sample_rate};
  for (std::size_t f = 0; f < n_frames; ++f) std::copy(taps.begin(), taps.end(), h.taps.row(f).begin());
  return h;
}

namespace detail {

inline void check_frame_grid(std::size_t n_frames, std::size_t n_samples, std::size_t hop) {
  const std::size_t expected = ceil_div(n_samples, hop);
  const std::size_t gap = n_frames > expected ? n_frames - expected : expected - n_frames;
  if (n_frames == 0 || gap > 1)
    fail(ErrorCategory::LengthMismatch, std::to_string(n_frames) + " filter frames do not match " +
                                            std::to_string(n_samples) + " samples (expected " +
                                            std::to_string(expected) + ")");
}

}  // namespace detail

/// Filters x with tap vectors interpolated linearly between frame centres.
///
/// y[n] = sum_t h_n[t] x[n - t], causal with zero initial state. Samples past
/// the last frame centre use the last frame's taps.
inline AudioSignal apply_ltv(const AudioSignal& x, const LtvFirCoeffs& h) {
  validate(h);
  detail::validate_signal(x, "apply_ltv");
  if (x.empty()) detail::fail(ErrorCategory::Domain, "apply_ltv: empty signal");
  if (h.sample_rate != x.sample_rate)
    detail::fail(ErrorCategory::Config, "apply_ltv: sample-rate mismatch");
  const std::size_t hop = detail::hop_samples(h.hop_seconds, h.sample_rate);
  const std::size_t n_frames = h.n_frames();
  detail::check_frame_grid(n_frames, x.size(), hop);

  const std::size_t n_taps = h.n_taps();
  std::vector<double> taps(n_taps);
  AudioSignal y{std::vector<double>(x.size(), 0.0), x.sample_rate};
  for (std::size_t n = 0; n < x.size(); ++n) {
    const std::size_t left = n / hop;
    if (left + 1 >= n_frames) {
      const auto row = h.taps.row(n_frames - 1);
      std::copy(row.begin(), row.end(), taps.begin());
    } else {
      const double w = static_cast<double>(n - left * hop) / static_cast<double>(hop);
      const auto a = h.taps.row(left);
      const auto b = h.taps.row(left + 1);
      for (std::size_t t = 0; t < n_taps; ++t) taps[t] = a[t] + w * (b[t] - a[t]);
    }
    const std::size_t reach = std::min(n_taps, n + 1);
    double acc = 0.0;
    for (std::size_t t = 0; t < reach; ++t) acc += taps[t] * x.samples[n - t];
    y.samples[n] = acc;
  }
  return y;
}

/// Magnitude response of one frame in dB over n_fft/2 + 1 bins, floored at -120 dB.
inline std::vector<double> frequency_response(const LtvFirCoeffs& h, std::size_t frame,
                                              std::size_t n_fft) {
  if (frame >= h.n_frames())
    detail::fail(ErrorCategory::Index, "frame " + std::to_string(frame) + " out of range (" +
                                           std::to_string(h.n_frames()) + " frames)");
  if (n_fft < h.n_taps()) detail::fail(ErrorCategory::Config, "n_fft must be >= n_taps");
  RealFft fft(n_fft);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(h.taps.row(frame), spec);
  std::vector<double> db(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k)
    db[k] = std::max(-120.0, 20.0 * std::log10(std::abs(spec[k])));
  return db;
}

// ---------------------------------------------------------------------------
// Deterministic coefficient estimate from a mel spectrogram.

struct EstimateConfig {
  std::size_t n_taps = 64;
  /// Lower bound on the linear-frequency magnitude, in dB.
  double floor_db = -50.0;
};

namespace detail {

inline std::size_t next_pow2(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Weights mapping log-mel bands onto a linear-frequency grid. Each grid point
// takes the weight-normalised average of the bands covering it; points no band
// covers copy their nearest covered neighbour.
inline Matrix mel_to_linear_projection(const MelFilterbank& bank, std::size_t n_fft) {
  const std::size_t bins = n_fft / 2 + 1;
  Matrix proj(bins, bank.n_mels());
  std::vector<bool> covered(bins, false);
  for (std::size_t k = 0; k < bins; ++k) {
    const double hz = bank.bin_hz(k, n_fft);
    double total = 0.0;
    for (std::size_t m = 0; m < bank.n_mels(); ++m) total += (proj(k, m) = bank.weight(m, hz));
    if (total > 0.0) {
      covered[k] = true;
      for (std::size_t m = 0; m < bank.n_mels(); ++m) proj(k, m) /= total;
    }
  }
  const auto first = std::find(covered.begin(), covered.end(), true);
  if (first == covered.end()) fail(ErrorCategory::Config, "degenerate mel filterbank: no bin covered");
  const std::size_t lo = static_cast<std::size_t>(first - covered.begin());
  std::size_t hi = bins - 1;
  while (!covered[hi]) --hi;
  for (std::size_t k = 0; k < bins; ++k) {
    if (covered[k]) continue;
    const std::size_t src = k < lo ? lo : hi;
    std::copy(proj.row(src).begin(), proj.row(src).end(), proj.row(k).begin());
  }
  return proj;
}

}  // namespace detail

/// Minimum-phase FIR per mel frame whose magnitude follows the mel envelope.
///
/// Mel power exp(L) maps to magnitude exp(L / 2); the log envelope is spread
/// onto a linear grid with the normalised filterbank transpose, floored at
/// floor_db, and converted to n_taps minimum-phase taps through the real
/// cepstrum. Frame grid and hop match the mel spectrogram.
inline LtvFirCoeffs estimate_coeffs_from_mel(const MelSpectrogram& mel, const EstimateConfig& cfg = {}) {
  validate(mel.stft);
  if (cfg.n_taps == 0 || cfg.n_taps > 2 * mel.stft.fft_size)
    detail::fail(ErrorCategory::Config, "n_taps must be in [1, 2 * fft_size]");
  if (!std::isfinite(cfg.floor_db)) detail::fail(ErrorCategory::Config, "floor_db must be finite");
  if (mel.n_mels() != mel.mel.n_mels)
    detail::fail(ErrorCategory::Config, "mel frame width disagrees with its config");
  if (!detail::all_finite(mel.frames.data)) detail::fail(ErrorCategory::Domain, "non-finite mel value");

  const MelFilterbank bank = mel.filterbank();
  bank.matrix(mel.stft.fft_size);  // throws on an all-zero band

  const std::size_t n_fft = detail::next_pow2(std::max<std::size_t>({4096, mel.stft.fft_size, 4 * cfg.n_taps}));
  const Matrix proj = detail::mel_to_linear_projection(bank, n_fft);
  const double floor_ln = cfg.floor_db * std::numbers::ln10 / 20.0;

  LtvFirCoeffs out{Matrix(mel.n_frames(), cfg.n_taps), mel.hop_seconds(), mel.sample_rate};
  std::vector<double> log_mag(proj.rows);
  for (std::size_t f = 0; f < mel.n_frames(); ++f) {
    const auto frame = mel.frames.row(f);
    for (std::size_t k = 0; k < proj.rows; ++k) {
      const auto w = proj.row(k);
      double log_power = 0.0;
      for (std::size_t m = 0; m < frame.size(); ++m) log_power += w[m] * frame[m];
      log_mag[k] = std::max(0.5 * log_power, floor_ln);
    }
    const auto taps = minimum_phase_fir(log_mag, cfg.n_taps);
    std::copy(taps.begin(), taps.end(), out.taps.row(f).begin());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Least-squares fit against a target waveform.

enum class FitMode {
  /// One system over all frames, using the same tap interpolation as
  /// apply_ltv. Refiltering with the result minimises the total squared error.
  Joint,
  /// Independent ridge problem per frame over the hop-long span centred on
  /// the frame, with a single tap vector per span.
  PerFrame,
};

struct FitConfig {
  std::size_t n_taps = 64;
  double ridge_lambda = 1e-6;
  double frame_hop_seconds = kDefaultHopSeconds;
  FitMode mode = FitMode::Joint;
};

inline void validate(const FitConfig& cfg) {
  if (cfg.n_taps == 0) detail::fail(ErrorCategory::Config, "n_taps must be >= 1");
  if (!(cfg.ridge_lambda >= 0.0) || !std::isfinite(cfg.ridge_lambda))
    detail::fail(ErrorCategory::Config, "ridge_lambda must be finite and >= 0");
  if (!(cfg.frame_hop_seconds > 0.0)) detail::fail(ErrorCategory::Config, "frame hop must be positive");
}

namespace detail {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// Relative diagonal load that keeps exactly singular (rank-deficient) frames
// solvable when lambda is zero.
inline constexpr double kDiagonalLoad = 1e-12;

inline double lagged(std::span<const double> x, long long i) noexcept {
  return i < 0 ? 0.0 : x[static_cast<std::size_t>(i)];
}

inline double effective_ridge(const MatX& gram, double lambda) {
  const double mean_diag = gram.trace() / static_cast<double>(gram.rows());
  return std::max(lambda, kDiagonalLoad * mean_diag);
}

// Covariance of lagged excitation over [begin, end), built from its first row
// and the shift recursion R[i+1][j+1] = R[i][j] + x[b-1-i]x[b-1-j] - x[e-1-i]x[e-1-j].
inline MatX lagged_covariance(std::span<const double> x, std::size_t begin, std::size_t end,
                              std::size_t n_taps) {
  MatX r(n_taps, n_taps);
  const auto b = static_cast<long long>(begin);
  const auto e = static_cast<long long>(end);
  for (std::size_t j = 0; j < n_taps; ++j) {
    double acc = 0.0;
    for (long long n = b; n < e; ++n) acc += x[static_cast<std::size_t>(n)] * lagged(x, n - static_cast<long long>(j));
    r(0, static_cast<Eigen::Index>(j)) = acc;
  }
  for (std::size_t i = 0; i + 1 < n_taps; ++i) {
    const auto ii = static_cast<long long>(i);
    for (std::size_t j = i; j + 1 < n_taps; ++j) {
      const auto jj = static_cast<long long>(j);
      r(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(j + 1)) =
          r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
          lagged(x, b - 1 - ii) * lagged(x, b - 1 - jj) - lagged(x, e - 1 - ii) * lagged(x, e - 1 - jj);
    }
  }
  return r.selfadjointView<Eigen::Upper>();
}

inline LtvFirCoeffs fit_per_frame(std::span<const double> x, std::span<const double> y, std::size_t hop,
                                  std::size_t n_frames, const FitConfig& cfg, double fs) {
  const std::size_t n_taps = cfg.n_taps;
  const auto ntaps_i = static_cast<Eigen::Index>(n_taps);
  LtvFirCoeffs out{Matrix(n_frames, n_taps), cfg.frame_hop_seconds, fs};
  for (std::size_t f = 0; f < n_frames; ++f) {
    const long long lo = static_cast<long long>(f * hop) - static_cast<long long>(hop / 2);
    const std::size_t begin = static_cast<std::size_t>(std::max(0LL, lo));
    const std::size_t end = std::min(x.size(), static_cast<std::size_t>(lo + static_cast<long long>(hop)));
    if (end <= begin) continue;
    MatX gram = lagged_covariance(x, begin, end, n_taps);
    if (gram.trace() == 0.0) continue;
    VecX rhs = VecX::Zero(ntaps_i);
    for (std::size_t t = 0; t < n_taps; ++t) {
      double acc = 0.0;
      for (std::size_t n = begin; n < end; ++n)
        acc += y[n] * lagged(x, static_cast<long long>(n) - static_cast<long long>(t));
      rhs(static_cast<Eigen::Index>(t)) = acc;
    }
    gram.diagonal().array() += effective_ridge(gram, cfg.ridge_lambda);
    const VecX h = gram.ldlt().solve(rhs);
    for (std::size_t t = 0; t < n_taps; ++t) out.taps(f, t) = h(static_cast<Eigen::Index>(t));
  }
  return out;
}

// Normal equations of the interpolated model are block tridiagonal:
// diagonal blocks D_f, coupling blocks E_f between frames f and f + 1.
inline LtvFirCoeffs fit_joint(std::span<const double> x, std::span<const double> y, std::size_t hop,
                              std::size_t n_frames, const FitConfig& cfg, double fs) {
  const std::size_t n_taps = cfg.n_taps;
  const auto T = static_cast<Eigen::Index>(n_taps);
  std::vector<MatX> diag(n_frames, MatX::Zero(T, T));
  std::vector<MatX> coupling(n_frames > 0 ? n_frames - 1 : 0, MatX::Zero(T, T));
  std::vector<VecX> rhs(n_frames, VecX::Zero(T));

  const std::size_t n = x.size();
  MatX rows(static_cast<Eigen::Index>(hop), 2 * T);
  VecX targets(static_cast<Eigen::Index>(hop));
  for (std::size_t seg = 0; seg * hop < n; ++seg) {
    const std::size_t begin = seg * hop;
    const std::size_t len = std::min(hop, n - begin);
    const bool tail = seg + 1 >= n_frames;
    const std::size_t f = tail ? n_frames - 1 : seg;
    rows.setZero();
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t s = begin + i;
      const double w = tail ? 0.0 : static_cast<double>(i) / static_cast<double>(hop);
      const auto ri = static_cast<Eigen::Index>(i);
      for (Eigen::Index t = 0; t < T; ++t) {
        const double v = lagged(x, static_cast<long long>(s) - t);
        rows(ri, t) = (1.0 - w) * v;
        rows(ri, T + t) = w * v;
      }
      targets(ri) = y[s];
    }
    const auto used = static_cast<Eigen::Index>(len);
    const auto block = rows.topRows(used);
    if (tail) {
      diag[f].noalias() += block.leftCols(T).transpose() * block.leftCols(T);
      rhs[f].noalias() += block.leftCols(T).transpose() * targets.head(used);
      continue;
    }
    const MatX gram = block.transpose() * block;
    diag[f] += gram.topLeftCorner(T, T);
    coupling[f] += gram.topRightCorner(T, T);
    diag[f + 1] += gram.bottomRightCorner(T, T);
    const VecX proj = block.transpose() * targets.head(used);
    rhs[f] += proj.head(T);
    rhs[f + 1] += proj.tail(T);
  }

  // Frames with no excitation in reach are pinned to zero taps.
  for (std::size_t f = 0; f < n_frames; ++f) {
    if (diag[f].trace() == 0.0)
      diag[f].setIdentity();
    else
      diag[f].diagonal().array() += effective_ridge(diag[f], cfg.ridge_lambda);
  }

  // Block forward elimination, then back substitution.
  std::vector<VecX> partial(n_frames);
  std::vector<MatX> gain(coupling.size());
  MatX schur = diag[0];
  VecX z = rhs[0];
  for (std::size_t f = 0; f < n_frames; ++f) {
    const Eigen::LDLT<MatX> ldlt(schur);
    partial[f] = ldlt.solve(z);
    if (f + 1 == n_frames) break;
    gain[f] = ldlt.solve(coupling[f]);
    schur = diag[f + 1] - coupling[f].transpose() * gain[f];
    z = rhs[f + 1] - gain[f].transpose() * z;
  }

  LtvFirCoeffs out{Matrix(n_frames, n_taps), cfg.frame_hop_seconds, fs};
  VecX next = partial[n_frames - 1];
  for (std::size_t f = n_frames; f-- > 0;) {
    if (f + 1 < n_frames) next = partial[f] - gain[f] * next;
    for (std::size_t t = 0; t < n_taps; ++t) out.taps(f, t) = next(static_cast<Eigen::Index>(t));
  }
  return out;
}

}  // namespace detail

/// Ridge least-squares LTV taps mapping `excitation` onto `target`.
///
/// Frames sit on a hop grid of ceil(len / hop) centres. Joint mode solves for
/// all frames at once under the apply_ltv interpolation, so refiltering the
/// excitation with the result is the least-squares approximation of the
/// target. Per-frame mode fits each centred span on its own. Frames whose
/// excitation is entirely zero get all-zero taps in both modes.
inline LtvFirCoeffs fit_coeffs_least_squares(const AudioSignal& excitation, const AudioSignal& target,
                                             const FitConfig& cfg = {}) {
  validate(cfg);
  detail::validate_sample_rate(excitation.sample_rate);
  if (excitation.sample_rate != target.sample_rate)
    detail::fail(ErrorCategory::Config, "fit: sample-rate mismatch");
  if (excitation.size() != target.size())
    detail::fail(ErrorCategory::Config, "fit: excitation and target lengths differ");
  if (excitation.empty()) detail::fail(ErrorCategory::Domain, "fit: empty signals");
  if (!detail::all_finite(excitation.samples) || !detail::all_finite(target.samples))
    detail::fail(ErrorCategory::Domain, "fit: non-finite input");

  const std::size_t hop = detail::hop_samples(cfg.frame_hop_seconds, excitation.sample_rate);
  const std::size_t n_frames = detail::ceil_div(excitation.size(), hop);
  if (cfg.mode == FitMode::PerFrame)
    return detail::fit_per_frame(excitation.samples, target.samples, hop, n_frames, cfg,
                                 excitation.sample_rate);
  return detail::fit_joint(excitation.samples, target.samples, hop, n_frames, cfg, excitation.sample_rate);
}

}  // namespace harmex

#endif  // HARMEX_LTV_HPP
