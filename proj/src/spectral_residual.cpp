#include "ompad/spectral_residual.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ompad/fft.hpp"

namespace ompad {

namespace {

void check_window(std::span<const double> window, const SrConfig& cfg) {
  if (cfg.extend_k == 0 || cfg.mean_filter_q == 0 || cfg.score_window_z == 0)
    throw std::invalid_argument("spectral residual window sizes must be positive");
  if (!(cfg.threshold > 0.0))
    throw std::invalid_argument("saliency threshold must be positive");
  if (window.size() < 2 * cfg.extend_k || window.size() < 2 * cfg.mean_filter_q ||
      window.size() < cfg.extend_k + 2)
    throw std::invalid_argument("window too short for spectral residual");
  if (cfg.score_window_z >= window.size())
    throw std::invalid_argument("score window must be shorter than the input");
  for (double v : window)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in window");
}

// Append extend_k copies of a linear estimate of where the series is heading.
// The gradient base stops at the second-to-last point: the last point is the
// one being judged, and letting it steer the extrapolation would surround a
// terminal spike with equally extreme estimates, hiding exactly the case the
// extension exists to expose.
std::vector<double> extend(std::span<const double> window, std::size_t k) {
  const std::size_t n = window.size();
  const std::size_t b = n - 2;
  double g = 0.0;
  for (std::size_t i = 1; i <= k; ++i)
    g += (window[b] - window[b - i]) / static_cast<double>(i);
  g /= static_cast<double>(k);
  const double estimate = window[b - k + 1] + g * static_cast<double>(k);
  std::vector<double> out(window.begin(), window.end());
  out.insert(out.end(), k, estimate);
  return out;
}

}  // namespace

SaliencyMap sr_saliency(std::span<const double> window, const SrConfig& cfg) {
  check_window(window, cfg);
  const std::vector<double> series = extend(window, cfg.extend_k);
  const std::size_t n = series.size();

  std::vector<fft::Complex> spectrum(n);
  for (std::size_t i = 0; i < n; ++i) spectrum[i] = fft::Complex(series[i], 0.0);
  spectrum = fft::forward(std::move(spectrum));

  std::vector<double> log_amp(n);
  for (std::size_t i = 0; i < n; ++i) log_amp[i] = std::log(std::abs(spectrum[i]) + cfg.eps);

  // Centered moving average; the window shrinks where it would run past
  // either edge instead of shifting.
  const std::size_t q = cfg.mean_filter_q;
  const std::size_t half_lo = (q - 1) / 2;
  const std::size_t half_hi = q / 2;
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_lo ? i - half_lo : 0;
    const std::size_t hi = std::min(n - 1, i + half_hi);
    double s = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) s += log_amp[j];
    residual[i] = log_amp[i] - s / static_cast<double>(hi - lo + 1);
  }

  // Swap in the residual amplitude, keep the phase, transform back.
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = std::abs(spectrum[i]);
    const fft::Complex phase =
        amp > 0.0 ? spectrum[i] / amp : fft::Complex(1.0, 0.0);
    spectrum[i] = std::exp(residual[i]) * phase;
  }
  spectrum = fft::inverse(std::move(spectrum));

  SaliencyMap map;
  map.real_length = window.size();
  map.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) map.values[i] = std::abs(spectrum[i]);
  return map;
}

double sr_last_point_score(std::span<const double> window, const SrConfig& cfg) {
  const SaliencyMap map = sr_saliency(window, cfg);
  const std::size_t last = map.real_length - 1;
  double s = 0.0;
  for (std::size_t i = last - cfg.score_window_z; i < last; ++i) s += map.values[i];
  const double local_mean = s / static_cast<double>(cfg.score_window_z);
  return (map.values[last] - local_mean) / (local_mean + cfg.eps);
}

bool sr_decide(std::span<const double> window, const SrConfig& cfg) {
  return sr_last_point_score(window, cfg) > cfg.threshold;
}

}  // namespace ompad
