#include "ompad/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace ompad {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

bool parse_f64(std::string_view s, double& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto r = std::from_chars(b, e, out);
  return r.ec == std::errc() && r.ptr == e;
}

struct Record {
  std::int64_t timestamp;
  double value;
  std::uint8_t label;
};

std::vector<Record> read_csv(std::istream& in, const std::string& source) {
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!saw_header) {
      saw_header = true;
      if (row.substr(0, 9) == "timestamp") continue;
      fail(source, lineno, "expected header starting with 'timestamp'");
    }
    std::string_view fields[3];
    std::size_t count = 0;
    while (true) {
      const std::size_t comma = row.find(',');
      if (count >= 3) fail(source, lineno, "too many fields");
      if (comma == std::string_view::npos) {
        fields[count++] = trim(row);
        break;
      }
      fields[count++] = trim(row.substr(0, comma));
      row.remove_prefix(comma + 1);
    }
    if (count < 2) fail(source, lineno, "expected timestamp,value[,label]");
    Record r{0, kNaN, 0};
    if (!parse_i64(fields[0], r.timestamp))
      fail(source, lineno, "malformed timestamp '" + std::string(fields[0]) + "'");
    if (!fields[1].empty() && fields[1] != "null") {
      if (!parse_f64(fields[1], r.value))
        fail(source, lineno, "malformed value '" + std::string(fields[1]) + "'");
    }
    if (count == 3 && !fields[2].empty()) {
      std::int64_t lab;
      if (!parse_i64(fields[2], lab) || (lab != 0 && lab != 1))
        fail(source, lineno, "label must be 0 or 1");
      r.label = static_cast<std::uint8_t>(lab);
    }
    records.push_back(r);
  }
  return records;
}

std::vector<Record> read_ndjson(std::istream& in, const std::string& source) {
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(source, lineno, std::string("bad json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("timestamp") || !j.contains("value"))
      fail(source, lineno, "expected object with timestamp and value");
    Record r{0, kNaN, 0};
    if (!j["timestamp"].is_number_integer())
      fail(source, lineno, "timestamp must be an integer");
    r.timestamp = j["timestamp"].get<std::int64_t>();
    if (j["value"].is_number()) {
      r.value = j["value"].get<double>();
    } else if (!j["value"].is_null()) {
      fail(source, lineno, "value must be a number or null");
    }
    if (j.contains("label") && !j["label"].is_null()) {
      if (!j["label"].is_number_integer())
        fail(source, lineno, "label must be 0 or 1");
      const std::int64_t lab = j["label"].get<std::int64_t>();
      if (lab != 0 && lab != 1) fail(source, lineno, "label must be 0 or 1");
      r.label = static_cast<std::uint8_t>(lab);
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace

LabeledSeries parse_series(std::istream& in, SeriesFormat format,
                           const std::string& source_name) {
  std::vector<Record> records = format == SeriesFormat::csv
                                    ? read_csv(in, source_name)
                                    : read_ndjson(in, source_name);
  if (records.empty()) throw std::runtime_error(source_name + ": empty series");

  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) { return a.timestamp < b.timestamp; });

  LabeledSeries s;
  s.timestamps.reserve(records.size());
  s.values.reserve(records.size());
  s.labels.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    // Duplicates are adjacent after the stable sort; the last one wins.
    if (i + 1 < records.size() && records[i + 1].timestamp == records[i].timestamp)
      continue;
    s.timestamps.push_back(records[i].timestamp);
    s.values.push_back(records[i].value);
    s.labels.push_back(records[i].label);
  }
  s.filled.assign(s.values.size(), 0);
  return s;
}

LabeledSeries parse_series_file(const std::string& path, SeriesFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_series(in, format, path);
}

void serialize_series(const LabeledSeries& s, std::ostream& out) {
  out << "timestamp,value,label\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s.timestamps[i] << ',';
    if (!std::isnan(s.values[i])) {
      auto r = std::to_chars(buf, buf + sizeof(buf), s.values[i]);
      out.write(buf, r.ptr - buf);
    }
    out << ',' << static_cast<int>(s.labels[i]) << '\n';
  }
}

std::int64_t infer_step_seconds(const LabeledSeries& s) {
  if (s.size() < 2) return 0;
  std::map<std::int64_t, std::size_t> counts;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const std::int64_t d = s.timestamps[i] - s.timestamps[i - 1];
    if (d > 0) ++counts[d];
  }
  std::int64_t best = 0;
  std::size_t best_count = 0;
  for (const auto& [delta, count] : counts) {
    if (count > best_count) {
      best = delta;
      best_count = count;
    }
  }
  return best;
}

LabeledSeries fill_missing(const LabeledSeries& s, std::size_t period) {
  if (s.size() == 0) throw std::invalid_argument("empty series");
  if (period == 0) throw std::invalid_argument("period must be positive");
  const std::int64_t step = s.granularity.seconds;
  if (step <= 0) throw std::invalid_argument("granularity must be positive");

  const std::int64_t t0 = s.timestamps.front();
  const std::int64_t span = s.timestamps.back() - t0;
  if (span % step != 0)
    throw std::runtime_error("timestamp " + std::to_string(s.timestamps.back()) +
                             " is off the sampling grid");
  const std::size_t n = static_cast<std::size_t>(span / step) + 1;

  LabeledSeries out;
  out.granularity = s.granularity;
  out.timestamps.resize(n);
  out.values.assign(n, kNaN);
  out.labels.assign(n, 0);
  out.filled.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    out.timestamps[i] = t0 + static_cast<std::int64_t>(i) * step;

  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::int64_t off = s.timestamps[i] - t0;
    if (off % step != 0)
      throw std::runtime_error("timestamp " + std::to_string(s.timestamps[i]) +
                               " is off the sampling grid");
    const std::size_t slot = static_cast<std::size_t>(off / step);
    out.values[slot] = s.values[i];
    out.labels[slot] = s.labels[i];
  }

  std::size_t i = 0;
  while (i < n) {
    if (!std::isnan(out.values[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && std::isnan(out.values[j])) ++j;  // gap is [i, j)
    const std::size_t gap = j - i;
    const bool have_left = i > 0;
    const bool have_right = j < n;
    if (gap < period && have_left && have_right) {
      const double lo = out.values[i - 1];
      const double hi = out.values[j];
      const double denom = static_cast<double>(gap + 1);
      for (std::size_t k = i; k < j; ++k)
        out.values[k] = lo + (hi - lo) * static_cast<double>(k - i + 1) / denom;
    } else {
      for (std::size_t k = i; k < j; ++k) {
        if (k < period)
          throw std::runtime_error("gap at timestamp " +
                                   std::to_string(out.timestamps[k]) +
                                   " reaches past the start of the data");
        out.values[k] = out.values[k - period];
      }
    }
    for (std::size_t k = i; k < j; ++k) {
      out.labels[k] = 0;
      out.filled[k] = 1;
    }
    i = j;
  }
  return out;
}

SeriesSplit split_half(const LabeledSeries& s) { return SeriesSplit{s.size() / 2}; }

}  // namespace ompad
