#include "ompad/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ompad {

double NormalSampler::uniform() {
  // 53 mantissa bits, shifted into (0, 1] so log() below never sees zero.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NormalSampler::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

namespace {

double amplitude_at(const std::vector<AmplitudePoint>& points, std::size_t t) {
  if (points.empty()) return 1.0;
  if (t <= points.front().index) return points.front().amplitude;
  if (t >= points.back().index) return points.back().amplitude;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (t > points[i].index) continue;
    const auto& a = points[i - 1];
    const auto& b = points[i];
    const double frac = static_cast<double>(t - a.index) /
                        static_cast<double>(b.index - a.index);
    return a.amplitude + (b.amplitude - a.amplitude) * frac;
  }
  return points.back().amplitude;
}

}  // namespace

LabeledSeries generate(const SynthSpec& spec) {
  if (spec.length == 0) throw std::invalid_argument("length must be positive");
  if (spec.waveform == Waveform::sine && spec.period < 2)
    throw std::invalid_argument("period must be at least 2");
  if (spec.step_seconds <= 0) throw std::invalid_argument("step must be positive");
  for (std::size_t i = 1; i < spec.amplitude.size(); ++i) {
    if (spec.amplitude[i].index <= spec.amplitude[i - 1].index)
      throw std::invalid_argument("amplitude points must have increasing indices");
  }
  for (const auto& a : spec.anomalies) {
    if (a.duration == 0 || a.position + a.duration > spec.length)
      throw std::invalid_argument("anomaly does not fit in the series");
  }

  NormalSampler noise(spec.seed);
  const std::size_t n = spec.length;
  std::vector<double> base(n);
  if (spec.waveform == Waveform::sine) {
    const double w = 2.0 * std::numbers::pi / static_cast<double>(spec.period);
    for (std::size_t t = 0; t < n; ++t) base[t] = std::sin(w * static_cast<double>(t));
  } else {
    double x = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      x = spec.ar1_phi * x + spec.ar1_sigma * noise();
      base[t] = x;
    }
  }

  LabeledSeries s;
  s.granularity.seconds = spec.step_seconds;
  s.timestamps.resize(n);
  s.values.resize(n);
  s.labels.assign(n, 0);
  s.filled.assign(n, 0);

  for (std::size_t t = 0; t < n; ++t)
    s.values[t] = amplitude_at(spec.amplitude, t) * base[t];

  for (const auto& a : spec.anomalies) {
    for (std::size_t t = a.position; t < a.position + a.duration; ++t) {
      if (a.kind == AnomalySpec::Kind::spike)
        s.values[t] += a.magnitude;
      else
        s.values[t] *= a.magnitude;
      s.labels[t] = 1;
    }
  }

  for (std::size_t t = 0; t < n; ++t) {
    s.timestamps[t] = spec.start_timestamp + static_cast<std::int64_t>(t) * spec.step_seconds;
    s.values[t] += spec.noise_sigma * noise();
  }
  return s;
}

}  // namespace ompad
