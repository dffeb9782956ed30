#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ompad/series.hpp"
#include "ompad/synth.hpp"

using namespace ompad;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LabeledSeries parse_csv(const std::string& text, const std::string& name = "input.csv") {
  std::istringstream in(text);
  return parse_series(in, SeriesFormat::csv, name);
}

LabeledSeries parse_ndjson(const std::string& text) {
  std::istringstream in(text);
  return parse_series(in, SeriesFormat::ndjson, "input.ndjson");
}

std::string thrown_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

LabeledSeries make_series(std::vector<std::int64_t> ts, std::vector<double> vals,
                          std::int64_t step = 3600) {
  LabeledSeries s;
  s.timestamps = std::move(ts);
  s.values = std::move(vals);
  s.labels.assign(s.values.size(), 0);
  s.filled.assign(s.values.size(), 0);
  s.granularity.seconds = step;
  return s;
}

}  // namespace

TEST_CASE("well-formed CSV") {
  const auto s = parse_csv(
      "timestamp,value,label\n"
      "100,1.5,0\n"
      "160,2.25,1\n"
      "220,-0.75,0\n");
  REQUIRE(s.size() == 3);
  CHECK(s.timestamps == std::vector<std::int64_t>{100, 160, 220});
  CHECK(s.values == std::vector<double>{1.5, 2.25, -0.75});
  CHECK(s.labels == std::vector<std::uint8_t>{0, 1, 0});

  SUBCASE("label column is optional") {
    const auto t = parse_csv("timestamp,value\n100,1.5\n160,2.25\n");
    CHECK(t.labels == std::vector<std::uint8_t>{0, 0});
  }

  SUBCASE("empty value field means missing") {
    const auto t = parse_csv("timestamp,value,label\n100,,0\n160,2,0\n");
    CHECK(std::isnan(t.values[0]));
    CHECK(t.values[1] == 2.0);
  }
}

TEST_CASE("well-formed NDJSON") {
  const auto s = parse_ndjson(
      "{\"timestamp\": 100, \"value\": 1.5, \"label\": 1}\n"
      "{\"timestamp\": 160, \"value\": null}\n"
      "{\"timestamp\": 220, \"value\": -3}\n");
  REQUIRE(s.size() == 3);
  CHECK(s.values[0] == 1.5);
  CHECK(std::isnan(s.values[1]));
  CHECK(s.values[2] == -3.0);
  CHECK(s.labels == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("records sort and duplicate timestamps collapse to the last write") {
  const auto s = parse_csv(
      "timestamp,value,label\n"
      "100,1,0\n"
      "40,9,1\n"
      "100,7,0\n");
  REQUIRE(s.size() == 2);
  CHECK(s.timestamps == std::vector<std::int64_t>{40, 100});
  CHECK(s.values == std::vector<double>{9.0, 7.0});
}

TEST_CASE("parse errors name the source and line") {
  const std::string bad_value =
      "timestamp,value,label\n"
      "100,1.5,0\n"
      "160,abc,0\n";
  CHECK_THROWS_AS(parse_csv(bad_value), std::runtime_error);
  std::string msg = thrown_message([&] { parse_csv(bad_value); });
  CHECK(msg.find("input.csv:3") != std::string::npos);
  CHECK(msg.find("abc") != std::string::npos);

  msg = thrown_message([&] { parse_csv("not,a,header\n1,2,0\n"); });
  CHECK(msg.find("input.csv:1") != std::string::npos);

  msg = thrown_message([&] { parse_csv("timestamp,value,label\n100,1,2\n"); });
  CHECK(msg.find(":2:") != std::string::npos);
  CHECK(msg.find("label") != std::string::npos);

  CHECK_THROWS_AS(parse_csv("timestamp,value\n100,1,0,9\n"), std::runtime_error);

  msg = thrown_message([&] { parse_ndjson("{\"timestamp\": 1, \"value\": 2}\n{broken\n"); });
  CHECK(msg.find("input.ndjson:2") != std::string::npos);
  CHECK_THROWS_AS(parse_ndjson("{\"timestamp\": 1.5, \"value\": 2}\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_ndjson("{\"value\": 2}\n"), std::runtime_error);
}

TEST_CASE("empty input is an error") {
  CHECK_THROWS_AS(parse_csv(""), std::runtime_error);
  CHECK_THROWS_AS(parse_csv("timestamp,value,label\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_ndjson("\n\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_series_file("/nonexistent/path.csv", SeriesFormat::csv),
                  std::runtime_error);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(6301);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);

  LabeledSeries s = make_series({}, {});
  for (std::int64_t t = 0; t < 400; ++t) {
    s.timestamps.push_back(t * 3600);
    s.values.push_back(dist(rng));
    s.labels.push_back(t % 37 == 0 ? 1 : 0);
  }
  s.values[5] = kNaN;  // missing survives the round trip
  s.filled.assign(s.size(), 0);

  std::ostringstream out;
  serialize_series(s, out);
  const LabeledSeries back = parse_csv(out.str());

  REQUIRE(back.size() == s.size());
  CHECK(back.timestamps == s.timestamps);
  CHECK(back.labels == s.labels);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isnan(s.values[i]))
      CHECK(std::isnan(back.values[i]));
    else
      CHECK(back.values[i] == s.values[i]);  // shortest-round-trip formatting
  }
}

TEST_CASE("step inference picks the most common delta") {
  CHECK(infer_step_seconds(make_series({0, 60, 120, 180, 240, 360}, {1, 2, 3, 4, 5, 6})) == 60);
  CHECK(infer_step_seconds(make_series({0, 3600, 7200}, {1, 2, 3})) == 3600);
  CHECK(infer_step_seconds(make_series({5}, {1.0})) == 0);
}

TEST_CASE("short gaps interpolate linearly") {
  SUBCASE("absent row") {
    const auto filled = fill_missing(make_series({0, 7200}, {2.0, 4.0}), 24);
    REQUIRE(filled.size() == 3);
    CHECK(filled.timestamps == std::vector<std::int64_t>{0, 3600, 7200});
    CHECK(filled.values[1] == 3.0);
    CHECK(filled.filled == std::vector<std::uint8_t>{0, 1, 0});
    CHECK(filled.labels[1] == 0);
  }
  SUBCASE("present row with missing value") {
    const auto filled = fill_missing(make_series({0, 3600, 7200}, {2.0, kNaN, 4.0}), 24);
    CHECK(filled.values[1] == 3.0);
    CHECK(filled.filled[1] == 1);
  }
  SUBCASE("two missing points split the segment evenly") {
    const auto filled = fill_missing(make_series({0, 10800}, {1.0, 4.0}), 24);
    REQUIRE(filled.size() == 4);
    CHECK(filled.values[1] == doctest::Approx(2.0));
    CHECK(filled.values[2] == doctest::Approx(3.0));
  }
}

TEST_CASE("a gap of a full period copies the previous period") {
  const std::vector<double> pattern{10, 20, 30, 40};
  LabeledSeries s = make_series({}, {});
  for (std::int64_t t = 0; t < 12; ++t) {
    if (t >= 6 && t < 10) continue;  // drop one whole period
    s.timestamps.push_back(t * 3600);
    s.values.push_back(pattern[static_cast<std::size_t>(t) % 4]);
    s.labels.push_back(0);
  }
  s.filled.assign(s.values.size(), 0);

  const auto filled = fill_missing(s, 4);
  REQUIRE(filled.size() == 12);
  for (std::size_t t = 6; t < 10; ++t) {
    CHECK(filled.values[t] == pattern[t % 4]);
    CHECK(filled.filled[t] == 1);
  }
  for (std::size_t t = 0; t < 6; ++t) CHECK(filled.filled[t] == 0);
}

TEST_CASE("gaps that reach past the start are errors") {
  CHECK_THROWS_AS(fill_missing(make_series({0, 3600, 7200}, {kNaN, kNaN, 5.0}), 2),
                  std::runtime_error);
  // A long trailing gap needs a full period of history behind it.
  CHECK_THROWS_AS(fill_missing(make_series({0, 3600, 7200}, {5.0, kNaN, kNaN}), 8),
                  std::runtime_error);
  const auto ok = fill_missing(make_series({0, 3600, 7200}, {5.0, kNaN, kNaN}), 1);
  CHECK(ok.values == std::vector<double>{5.0, 5.0, 5.0});
}

TEST_CASE("off-grid timestamps are rejected") {
  CHECK_THROWS_AS(fill_missing(make_series({0, 1800, 3600}, {1, 2, 3}), 24),
                  std::runtime_error);
  CHECK_THROWS_AS(fill_missing(make_series({0, 3600, 5000}, {1, 2, 3}), 24),
                  std::runtime_error);
  CHECK_THROWS_AS(fill_missing(make_series({}, {}), 24), std::invalid_argument);
  CHECK_THROWS_AS(fill_missing(make_series({0, 3600}, {1, 2}), 0), std::invalid_argument);
}

TEST_CASE("random gap patterns fill densely and leave originals alone") {
  std::mt19937_64 rng(6302);
  SynthSpec spec;
  spec.length = 240;
  spec.period = 24;
  spec.noise_sigma = 0.1;
  spec.seed = 99;
  const LabeledSeries dense = generate(spec);

  std::bernoulli_distribution drop(0.2);
  for (int rep = 0; rep < 20; ++rep) {
    LabeledSeries sparse = make_series({}, {});
    std::vector<std::uint8_t> kept(dense.size(), 0);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      // Keep the first period intact so long gaps always have history.
      const bool keep = i < spec.period || i + 1 == dense.size() || !drop(rng);
      if (!keep) continue;
      kept[i] = 1;
      sparse.timestamps.push_back(dense.timestamps[i]);
      sparse.values.push_back(dense.values[i]);
      sparse.labels.push_back(dense.labels[i]);
    }
    sparse.filled.assign(sparse.size(), 0);

    const LabeledSeries filled = fill_missing(sparse, spec.period);
    REQUIRE(filled.size() == dense.size());
    for (std::size_t i = 0; i < filled.size(); ++i) {
      CHECK(filled.timestamps[i] ==
            dense.timestamps.front() + static_cast<std::int64_t>(i) * 3600);
      CHECK(!std::isnan(filled.values[i]));
      CHECK(filled.filled[i] == (kept[i] ? 0 : 1));
      if (kept[i]) CHECK(filled.values[i] == dense.values[i]);
    }
  }
}

TEST_CASE("half split") {
  SynthSpec spec;
  spec.length = 9;
  CHECK(split_half(generate(spec)).train_end == 4);
  spec.length = 10;
  CHECK(split_half(generate(spec)).train_end == 5);
}

TEST_CASE("generation is bit-deterministic per seed") {
  SynthSpec spec;
  spec.length = 500;
  spec.period = 24;
  spec.noise_sigma = 0.3;
  spec.seed = 1234;
  spec.anomalies.push_back({250, 6.0, 1, AnomalySpec::Kind::spike});

  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.timestamps == b.timestamps);
  CHECK(a.labels == b.labels);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);

  spec.seed = 1235;
  const auto c = generate(spec);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (a.values[i] != c.values[i]) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("zero-noise sine has clean labels and repeats every period") {
  SynthSpec spec;
  spec.length = 240;
  spec.period = 24;
  spec.noise_sigma = 0.0;
  const auto s = generate(spec);

  for (auto l : s.labels) CHECK(l == 0);
  for (std::size_t i = 0; i + spec.period < s.size(); ++i)
    CHECK(s.values[i] == doctest::Approx(s.values[i + spec.period]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("injected anomalies set labels exactly where they land") {
  SynthSpec spec;
  spec.length = 300;
  spec.period = 24;
  spec.noise_sigma = 0.0;
  spec.anomalies.push_back({100, 7.0, 1, AnomalySpec::Kind::spike});
  spec.anomalies.push_back({200, 3.0, 5, AnomalySpec::Kind::burst});
  const auto s = generate(spec);

  SynthSpec clean = spec;
  clean.anomalies.clear();
  const auto base = generate(clean);

  std::size_t ones = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool in_spike = i == 100;
    const bool in_burst = i >= 200 && i < 205;
    CHECK(s.labels[i] == (in_spike || in_burst ? 1 : 0));
    ones += s.labels[i];
    if (in_spike) CHECK(s.values[i] == base.values[i] + 7.0);
    else if (in_burst) CHECK(s.values[i] == doctest::Approx(base.values[i] * 3.0));
    else CHECK(s.values[i] == base.values[i]);
  }
  CHECK(ones == 6);
}

TEST_CASE("generator rejects malformed specs") {
  SynthSpec spec;
  spec.length = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec.length = 100;
  spec.period = 1;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec.period = 24;
  spec.step_seconds = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);

  spec.step_seconds = 3600;
  spec.anomalies.push_back({98, 5.0, 3, AnomalySpec::Kind::spike});
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.anomalies.clear();

  spec.amplitude = {{50, 1.0}, {50, 2.0}};
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}
