#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ompad/series.hpp"

namespace ompad {

// Deterministic gaussian source: Box-Muller over mt19937_64 so every platform
// with the same seed produces the same stream.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class Waveform { sine, ar1 };

struct AmplitudePoint {
  std::size_t index = 0;
  double amplitude = 1.0;
};

struct AnomalySpec {
  enum class Kind { spike, burst };
  std::size_t position = 0;
  double magnitude = 0.0;
  std::size_t duration = 1;
  Kind kind = Kind::spike;
};

struct SynthSpec {
  std::size_t length = 0;
  std::size_t period = 96;      // sine only
  Waveform waveform = Waveform::sine;
  double ar1_phi = 0.98;        // ar1 only
  double ar1_sigma = 1.0;       // ar1 innovation scale
  std::vector<AmplitudePoint> amplitude;  // piecewise linear; empty means 1.0
  double noise_sigma = 0.05;
  std::vector<AnomalySpec> anomalies;
  std::uint64_t seed = 1;
  std::int64_t start_timestamp = 0;
  std::int64_t step_seconds = 3600;
};

// Builds a labeled series: amplitude-scaled waveform, injected anomalies
// (spike adds magnitude, burst multiplies the clean signal), observation
// noise on top. Labels cover [position, position + duration) of each anomaly.
LabeledSeries generate(const SynthSpec& spec);

}  // namespace ompad
