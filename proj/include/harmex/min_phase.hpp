#ifndef HARMEX_MIN_PHASE_HPP
#define HARMEX_MIN_PHASE_HPP

#include <cmath>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>

#include "harmex/error.hpp"
#include "harmex/fft.hpp"

namespace harmex {

namespace detail {

inline std::vector<std::complex<double>> fir_zeros(std::span<const double> h) {
  std::size_t len = h.size();
  while (len > 1 && h[len - 1] == 0.0) --len;
  if (len < 2 || h[0] == 0.0) return {};
  const auto order = static_cast<Eigen::Index>(len - 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
  for (Eigen::Index j = 0; j < order; ++j) companion(0, j) = -h[static_cast<std::size_t>(j + 1)] / h[0];
  for (Eigen::Index i = 1; i < order; ++i) companion(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) return {};
  std::vector<std::complex<double>> zeros(static_cast<std::size_t>(order));
  for (Eigen::Index i = 0; i < order; ++i) zeros[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return zeros;
}

inline double max_zero_radius(std::span<const double> h) {
  double r = 0.0;
  for (const auto& z : fir_zeros(h)) r = std::max(r, std::abs(z));
  return r;
}

/// Pulls every zero of sum_t h[t] z^-t inside the unit circle.
///
/// Zeros outside are first mirrored to 1/conj(z) with a compensating gain,
/// which keeps the magnitude response. Rebuilding the polynomial from
/// clustered zeros is not exact, so any zero still on or outside the circle is
/// then moved inward by scaling h[t] by r^t.
inline void enforce_minimum_phase(std::vector<double>& h, double max_radius = 1.0 - 1e-7) {
  auto zeros = fir_zeros(h);
  if (zeros.empty()) return;
  double gain = h[0];
  bool changed = false;
  for (auto& z : zeros) {
    if (std::abs(z) > 1.0) {
      gain *= std::abs(z);
      z = 1.0 / std::conj(z);
      changed = true;
    }
  }
  if (changed) {
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& z : zeros) {
      poly.push_back(0.0);
      for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] -= z * poly[k - 1];
    }
    for (std::size_t k = 0; k < poly.size(); ++k) h[k] = gain * poly[k].real();
  }
  const double radius = max_zero_radius(h);
  if (radius > max_radius) {
    const double r = max_radius / radius;
    double scale = 1.0;
    for (auto& v : h) {
      v *= scale;
      scale *= r;
    }
  }
}

}  // namespace detail

/// Minimum-phase FIR whose magnitude response follows `log_magnitude`.
///
/// `log_magnitude` holds ln|H| on the n/2 + 1 non-negative bins of an n-point
/// grid (n = 2 * (size - 1), even). The real cepstrum is folded onto positive
/// quefrencies, exponentiated in the frequency domain and transformed back;
/// the first n_taps samples of that impulse response are returned, with any
/// zero pushed outside the unit circle by the truncation mirrored back inside.
inline std::vector<double> minimum_phase_fir(std::span<const double> log_magnitude,
                                             std::size_t n_taps) {
  if (log_magnitude.size() < 2)
    detail::fail(ErrorCategory::Config, "minimum_phase_fir: need at least two bins");
  const std::size_t n = 2 * (log_magnitude.size() - 1);
  if (n_taps == 0 || n_taps > n)
    detail::fail(ErrorCategory::Config, "minimum_phase_fir: n_taps out of range");

  RealFft fft(n);
  const std::size_t bins = fft.bins();
  std::vector<std::complex<double>> spec(bins);
  std::vector<double> cep(n);

  for (std::size_t k = 0; k < bins; ++k) spec[k] = log_magnitude[k];
  fft.inverse(spec, cep);

  // Fold the even cepstrum onto the causal half.
  for (std::size_t q = 1; q < n / 2; ++q) cep[q] *= 2.0;
  for (std::size_t q = n / 2 + 1; q < n; ++q) cep[q] = 0.0;

  fft.forward(cep, spec);
  for (auto& s : spec) s = std::exp(s);
  std::vector<double> impulse(n);
  fft.inverse(spec, impulse);
  impulse.resize(n_taps);
  detail::enforce_minimum_phase(impulse);
  return impulse;
}

}  // namespace harmex

#endif  // HARMEX_MIN_PHASE_HPP
