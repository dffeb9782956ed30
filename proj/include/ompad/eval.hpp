#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ompad/series.hpp"

namespace ompad {

// Segment-level scoring counters. A labeled anomaly segment counts as hit only
// when a detection lands within its first `delay` points; a credited segment
// contributes its full length as true positives, a missed one as false
// negatives. Detections outside any segment are false positives.
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  int delay = 0;
  double wall_time_s = 0.0;          // spent inside ingest calls, not parsing
  double time_per_timestamp_ms = 0.0;

  double precision() const {
    return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  double recall() const {
    return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
  }
  double f1() const {
    const double p = precision();
    const double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }

  EvalReport& operator+=(const EvalReport& other);
};

// Rewrites predictions segment by segment: every point of a hit segment
// becomes 1, every point of a missed segment becomes 0. Points outside
// labeled segments pass through. Applying the adjustment twice is a no-op.
std::vector<std::uint8_t> adjust_predictions(std::span<const std::uint8_t> labels,
                                             std::span<const std::uint8_t> predictions,
                                             int delay);

EvalReport score(std::span<const std::uint8_t> labels,
                 std::span<const std::uint8_t> predictions, int delay);

// Same, but positions with exclude[i] != 0 are left out of the counts.
// Segment crediting still looks at the full arrays so that excluding a few
// points does not split or un-hit a segment.
EvalReport score(std::span<const std::uint8_t> labels,
                 std::span<const std::uint8_t> predictions,
                 std::span<const std::uint8_t> exclude, int delay);

// Default detection-delay budget: 7 points at minute granularity, 3 at
// hourly. Any other step needs an explicit override.
int delay_for(Granularity g, std::optional<int> override = std::nullopt);

}  // namespace ompad
