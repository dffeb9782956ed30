#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ompad {

// Sampling step of a series. 60 and 3600 seconds carry the conventional
// minute/hour defaults elsewhere; anything else is custom.
struct Granularity {
  std::int64_t seconds = 3600;

  bool is_minute() const { return seconds == 60; }
  bool is_hour() const { return seconds == 3600; }
};

enum class SeriesFormat { csv, ndjson };

// A labeled series, timestamp-aligned. Missing observations are NaN until
// fill_missing runs; `filled` marks points it manufactured (those always
// carry label 0).
struct LabeledSeries {
  std::vector<std::int64_t> timestamps;
  std::vector<double> values;  // NaN = missing
  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> filled;
  Granularity granularity;

  std::size_t size() const { return values.size(); }
};

// Read timestamp/value/label records. Records are sorted by timestamp and
// de-duplicated, last write wins; absent labels default to 0. Errors carry
// the 1-based line number. The granularity field is left at its default;
// callers set or infer it.
LabeledSeries parse_series(std::istream& in, SeriesFormat format,
                           const std::string& source_name = "<input>");
LabeledSeries parse_series_file(const std::string& path, SeriesFormat format);

// Canonical CSV writer (header + one record per line, empty value = missing).
void serialize_series(const LabeledSeries& s, std::ostream& out);

// Most common positive timestamp delta; 0 when the series is too short.
std::int64_t infer_step_seconds(const LabeledSeries& s);

// Make the series dense on its timestamp grid. Runs of missing points
// shorter than one seasonal period are linearly interpolated between their
// neighbors; longer runs (and runs without both neighbors) copy the same
// slot from the most recent already-complete period. A gap that reaches
// back past the start of the data is an error.
LabeledSeries fill_missing(const LabeledSeries& s, std::size_t period);

// First half / second half split at floor(n/2); detectors that train on
// nothing still need the conventional evaluation partitions.
struct SeriesSplit {
  std::size_t train_end = 0;  // [0, train_end) train, [train_end, n) test
};
SeriesSplit split_half(const LabeledSeries& s);

}  // namespace ompad
