#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ompad/detector.hpp"
#include "ompad/eval.hpp"
#include "ompad/series.hpp"
#include "ompad/synth.hpp"

namespace fs = std::filesystem;
using namespace ompad;

namespace {

std::string fmt(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

// Built-in parameter profiles keyed on the sampling step.
struct Profile {
  std::size_t window;
  std::size_t cache;
  std::size_t ds_window;
  double threshold;
};

Profile profile_for(Granularity g) {
  if (g.is_minute()) return {2880, 14400, 30, 0.37};
  return {48, 240, 48, 0.35};  // hour profile doubles as the custom-step default
}

struct EngineFlags {
  std::string mode = "omp";
  std::string granularity = "hour";
  std::int64_t window = -1;
  std::int64_t cache = -1;
  std::int64_t ds_window = -1;
  double threshold = -1.0;
  std::int64_t exclusion = -1;
  double mp_threshold = 1.0;
  std::int64_t sr_extend = 5;
  std::int64_t sr_filter = 13;
  std::int64_t sr_score_window = 36;
  double sr_threshold = 5.5;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--mode", f.mode, "detector variant")
      ->check(CLI::IsMember({"omp", "mp-znorm", "mp-star", "mp-star-cache",
                             "mp-star-cache-ds", "sr-only"}));
  cmd->add_option("--granularity", f.granularity,
                  "sampling step: minute, hour, or seconds");
  cmd->add_option("--window,-m", f.window, "subsequence length");
  cmd->add_option("--cache,-c", f.cache, "cached points, 0 = unbounded");
  cmd->add_option("--ds-window,-l", f.ds_window, "significance strip length");
  cmd->add_option("--threshold,-t", f.threshold, "significance threshold");
  cmd->add_option("--exclusion", f.exclusion,
                  "left exclusion zone, default window/2");
  cmd->add_option("--mp-threshold", f.mp_threshold,
                  "profile-jump threshold for the mp-* modes");
  cmd->add_option("--sr-extend", f.sr_extend, "estimated points appended");
  cmd->add_option("--sr-filter", f.sr_filter, "spectrum smoothing width");
  cmd->add_option("--sr-score-window", f.sr_score_window,
                  "saliency points behind the scored one");
  cmd->add_option("--sr-threshold", f.sr_threshold, "saliency score cutoff");
}

struct Resolved {
  std::string mode;
  Granularity granularity;
  EngineConfig cfg;
};

Granularity parse_granularity(const std::string& s) {
  if (s == "minute") return Granularity{60};
  if (s == "hour") return Granularity{3600};
  std::int64_t seconds = 0;
  const char* b = s.data();
  auto r = std::from_chars(b, b + s.size(), seconds);
  if (r.ec != std::errc() || r.ptr != b + s.size() || seconds <= 0)
    throw CLI::ValidationError("--granularity",
                               "expected minute, hour, or a positive number of seconds");
  return Granularity{seconds};
}

Resolved resolve(const EngineFlags& f) {
  Resolved r;
  r.mode = f.mode;
  r.granularity = parse_granularity(f.granularity);
  const Profile p = profile_for(r.granularity);

  bool bounded_default = true;
  if (f.mode == "omp") {
    r.cfg.distance = DistanceKind::mean_normalized;
    r.cfg.rule = DecisionRule::significance_with_sr;
  } else if (f.mode == "mp-znorm") {
    r.cfg.distance = DistanceKind::z_normalized;
    r.cfg.rule = DecisionRule::mp_diff;
    bounded_default = false;
  } else if (f.mode == "mp-star") {
    r.cfg.distance = DistanceKind::mean_normalized;
    r.cfg.rule = DecisionRule::mp_diff;
    bounded_default = false;
  } else if (f.mode == "mp-star-cache") {
    r.cfg.distance = DistanceKind::mean_normalized;
    r.cfg.rule = DecisionRule::mp_diff;
  } else if (f.mode == "mp-star-cache-ds") {
    r.cfg.distance = DistanceKind::mean_normalized;
    r.cfg.rule = DecisionRule::significance;
  } else {  // sr-only
    r.cfg.distance = DistanceKind::mean_normalized;
    r.cfg.rule = DecisionRule::sr_only;
  }

  r.cfg.window = f.window >= 0 ? static_cast<std::size_t>(f.window) : p.window;
  r.cfg.capacity = f.cache >= 0 ? static_cast<std::size_t>(f.cache)
                                : (bounded_default ? p.cache : 0);
  r.cfg.ds_window =
      f.ds_window >= 0 ? static_cast<std::size_t>(f.ds_window) : p.ds_window;
  r.cfg.threshold = f.threshold >= 0.0 ? f.threshold : p.threshold;
  if (f.exclusion >= 0) r.cfg.exclusion = static_cast<std::size_t>(f.exclusion);
  r.cfg.mp_diff_threshold = f.mp_threshold;
  r.cfg.sr.extend_k = static_cast<std::size_t>(f.sr_extend);
  r.cfg.sr.mean_filter_q = static_cast<std::size_t>(f.sr_filter);
  r.cfg.sr.score_window_z = static_cast<std::size_t>(f.sr_score_window);
  r.cfg.sr.threshold = f.sr_threshold;
  r.cfg.validate();
  return r;
}

void print_header(std::ostream& out, const char* command, const Resolved& r,
                  SeriesFormat format) {
  out << "# ompad " << command << '\n';
  out << "# mode " << r.mode << '\n';
  out << "# granularity " << r.granularity.seconds << '\n';
  out << "# window " << r.cfg.window << '\n';
  out << "# cache " << r.cfg.capacity << '\n';
  out << "# ds-window " << r.cfg.effective_ds_window() << '\n';
  out << "# threshold " << fmt(r.cfg.threshold) << '\n';
  out << "# exclusion " << r.cfg.effective_exclusion() << '\n';
  out << "# warmup " << r.cfg.effective_warmup() << '\n';
  out << "# distance " << to_string(r.cfg.distance) << '\n';
  out << "# rule " << to_string(r.cfg.rule) << '\n';
  out << "# mp-threshold " << fmt(r.cfg.mp_diff_threshold) << '\n';
  out << "# sr-extend " << r.cfg.sr.extend_k << '\n';
  out << "# sr-filter " << r.cfg.sr.mean_filter_q << '\n';
  out << "# sr-score-window " << r.cfg.sr.score_window_z << '\n';
  out << "# sr-threshold " << fmt(r.cfg.sr.threshold) << '\n';
  out << "# format " << (format == SeriesFormat::csv ? "csv" : "ndjson") << '\n';
}

void write_outcome(std::ostream& out, std::int64_t timestamp,
                   const DetectionOutcome& o) {
  out << timestamp << ',' << fmt(o.value) << ',' << fmt(o.mp) << ','
      << o.mp_index << ',' << fmt(o.ds) << ',' << o.decision << ','
      << to_string(o.decided_by) << '\n';
}

constexpr const char* kRecordHeader =
    "timestamp,value,mp,mp_index,ds,decision,decided_by";

// Shared by detect and eval: parse, optionally fill gaps, stamp granularity.
LabeledSeries load_series(const std::string& path, SeriesFormat format,
                          Granularity gran, bool fill, std::size_t period) {
  LabeledSeries s = parse_series_file(path, format);
  s.granularity = gran;
  if (fill) s = fill_missing(s, period);
  return s;
}

std::size_t default_fill_period(Granularity g) {
  if (g.is_minute()) return 1440;  // one day
  if (g.is_hour()) return 24;
  return 24;
}

void run_detect_stream(std::istream& in, std::ostream& out, const Resolved& r,
                       SeriesFormat format) {
  StreamDetector det(r.cfg);
  std::string line;
  std::size_t lineno = 0;
  std::int64_t prev_ts = 0;
  bool first = true;
  bool saw_csv_header = false;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::int64_t ts = 0;
    double value = 0.0;
    if (format == SeriesFormat::csv) {
      if (!saw_csv_header) {
        saw_csv_header = true;
        if (line.rfind("timestamp", 0) == 0) continue;
        throw std::runtime_error("stdin:1: expected header starting with 'timestamp'");
      }
      const char* b = line.data();
      const char* e = b + line.size();
      auto r1 = std::from_chars(b, e, ts);
      if (r1.ec != std::errc() || r1.ptr == e || *r1.ptr != ',')
        throw std::runtime_error("stdin:" + std::to_string(lineno) + ": malformed row");
      const char* vb = r1.ptr + 1;
      auto r2 = std::from_chars(vb, e, value);
      if (r2.ec != std::errc() || (r2.ptr != e && *r2.ptr != ','))
        throw std::runtime_error("stdin:" + std::to_string(lineno) + ": malformed value");
    } else {
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object() || !j.contains("timestamp") ||
          !j.contains("value") || !j["value"].is_number())
        throw std::runtime_error("stdin:" + std::to_string(lineno) + ": malformed record");
      ts = j["timestamp"].get<std::int64_t>();
      value = j["value"].get<double>();
    }
    if (!first && ts <= prev_ts)
      throw std::runtime_error("stdin:" + std::to_string(lineno) +
                               ": timestamps must increase when streaming");
    first = false;
    prev_ts = ts;
    ++records;
    write_outcome(out, ts, det.ingest(value));
  }
  if (records == 0) throw std::runtime_error("stdin: empty series");
}

void run_detect_series(const LabeledSeries& s, std::ostream& out, const Resolved& r) {
  StreamDetector det(r.cfg);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isnan(s.values[i]))
      throw std::runtime_error("missing value at timestamp " +
                               std::to_string(s.timestamps[i]) +
                               "; rerun with --fill");
    write_outcome(out, s.timestamps[i], det.ingest(s.values[i]));
  }
}

void parallel_for(std::size_t n, std::size_t jobs,
                  const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<fs::path> list_input_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error(dir.string() + ": no input files");
  return files;
}

int cmd_detect(const EngineFlags& flags, const std::string& input,
               const std::string& out_dir, SeriesFormat format, bool fill,
               std::int64_t period_flag, std::size_t jobs) {
  const Resolved r = resolve(flags);
  const std::size_t period = period_flag > 0 ? static_cast<std::size_t>(period_flag)
                                             : default_fill_period(r.granularity);

  if (input == "-") {
    if (fill)
      throw std::runtime_error("--fill needs the whole series; pipe to a file first");
    print_header(std::cout, "detect", r, format);
    std::cout << kRecordHeader << '\n';
    run_detect_stream(std::cin, std::cout, r, format);
    return 0;
  }

  const fs::path in_path(input);
  if (fs::is_directory(in_path)) {
    if (out_dir.empty())
      throw std::runtime_error("directory input needs --out-dir");
    fs::create_directories(out_dir);
    const std::vector<fs::path> files = list_input_files(in_path);
    parallel_for(files.size(), jobs, [&](std::size_t i) {
      const LabeledSeries s = load_series(files[i].string(), format, r.granularity,
                                          fill, period);
      const fs::path dest = fs::path(out_dir) / (files[i].filename().string() + ".out");
      std::ofstream out(dest);
      if (!out) throw std::runtime_error("cannot write " + dest.string());
      print_header(out, "detect", r, format);
      out << kRecordHeader << '\n';
      run_detect_series(s, out, r);
    });
    return 0;
  }

  const LabeledSeries s = load_series(input, format, r.granularity, fill, period);
  print_header(std::cout, "detect", r, format);
  std::cout << kRecordHeader << '\n';
  run_detect_series(s, std::cout, r);
  return 0;
}

struct SeriesScore {
  std::string name;
  std::size_t total = 0;
  std::size_t scored = 0;
  EvalReport report;
};

SeriesScore eval_one(const std::string& path, const Resolved& r, SeriesFormat format,
                     bool fill, std::size_t period, int delay, bool split_half_mode,
                     bool exclude_filled) {
  SeriesScore result;
  result.name = fs::path(path).filename().string();
  LabeledSeries s = load_series(path, format, r.granularity, fill, period);

  StreamDetector det(r.cfg);
  std::vector<std::uint8_t> decisions(s.size(), 0);
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::isnan(s.values[i]))
      throw std::runtime_error(path + ": missing value at timestamp " +
                               std::to_string(s.timestamps[i]) +
                               "; rerun with --fill");
    decisions[i] = static_cast<std::uint8_t>(det.ingest(s.values[i]).decision);
  }
  const auto t1 = std::chrono::steady_clock::now();

  const std::size_t start = split_half_mode ? split_half(s).train_end : 0;
  std::span<const std::uint8_t> labels(s.labels.data() + start, s.size() - start);
  std::span<const std::uint8_t> preds(decisions.data() + start, s.size() - start);
  std::span<const std::uint8_t> exclude;
  if (exclude_filled && !s.filled.empty())
    exclude = std::span<const std::uint8_t>(s.filled.data() + start, s.size() - start);

  result.report = score(labels, preds, exclude, delay);
  result.total = s.size();
  result.scored = s.size() - start;
  result.report.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  result.report.time_per_timestamp_ms =
      s.size() ? result.report.wall_time_s * 1000.0 / static_cast<double>(s.size()) : 0.0;
  return result;
}

nlohmann::ordered_json score_record(const std::string& name, const SeriesScore& s) {
  nlohmann::ordered_json j;
  j["series"] = name;
  j["n"] = s.scored;
  j["tp"] = s.report.tp;
  j["fp"] = s.report.fp;
  j["fn"] = s.report.fn;
  j["precision"] = s.report.precision();
  j["recall"] = s.report.recall();
  j["f1"] = s.report.f1();
  j["q"] = s.report.delay;
  j["wall_time_s"] = s.report.wall_time_s;
  j["time_per_timestamp_ms"] = s.report.time_per_timestamp_ms;
  return j;
}

int cmd_eval(const EngineFlags& flags, const std::vector<std::string>& inputs,
             SeriesFormat format, bool fill, std::int64_t period_flag,
             std::int64_t delay_flag, bool split_half_mode, bool exclude_filled,
             std::size_t jobs) {
  const Resolved r = resolve(flags);
  const std::size_t period = period_flag > 0 ? static_cast<std::size_t>(period_flag)
                                             : default_fill_period(r.granularity);
  const int delay = delay_for(
      r.granularity,
      delay_flag > 0 ? std::optional<int>(static_cast<int>(delay_flag)) : std::nullopt);

  std::vector<std::string> paths;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      for (const auto& f : list_input_files(input)) paths.push_back(f.string());
    } else {
      paths.push_back(input);
    }
  }
  if (paths.empty()) throw std::runtime_error("no input series");

  std::vector<SeriesScore> scores(paths.size());
  parallel_for(paths.size(), jobs, [&](std::size_t i) {
    scores[i] = eval_one(paths[i], r, format, fill, period, delay, split_half_mode,
                         exclude_filled);
  });

  print_header(std::cout, "eval", r, format);
  SeriesScore total;
  total.report.delay = delay;
  for (const auto& s : scores) {
    std::cout << score_record(s.name, s).dump() << '\n';
    total.report += s.report;
    total.total += s.total;
    total.scored += s.scored;
  }
  total.report.time_per_timestamp_ms =
      total.total ? total.report.wall_time_s * 1000.0 / static_cast<double>(total.total)
                  : 0.0;
  std::cout << score_record("__aggregate__", total).dump() << '\n';
  return 0;
}

int cmd_bench(const EngineFlags& flags, const std::vector<std::size_t>& lengths,
              std::uint64_t seed) {
  const Resolved r = resolve(flags);
  if (r.cfg.unbounded())
    throw std::runtime_error("bench compares a bounded cache against c = n; "
                             "pick a mode or --cache with a bound");
  print_header(std::cout, "bench", r, SeriesFormat::csv);
  std::cout << "n,cached_s,cached_ms_per_ts,uncached_s,uncached_ms_per_ts,speedup\n";
  for (const std::size_t n : lengths) {
    SynthSpec spec;
    spec.length = n;
    spec.period = 24;
    spec.noise_sigma = 0.1;
    spec.seed = seed;
    const LabeledSeries s = generate(spec);

    auto timed_run = [&](EngineConfig cfg) {
      StreamDetector det(cfg);
      const auto t0 = std::chrono::steady_clock::now();
      for (double v : s.values) det.ingest(v);
      const auto t1 = std::chrono::steady_clock::now();
      return std::chrono::duration<double>(t1 - t0).count();
    };

    const double cached = timed_run(r.cfg);
    EngineConfig uncfg = r.cfg;
    uncfg.capacity = 0;
    const double uncached = timed_run(uncfg);

    const double nn = static_cast<double>(n);
    std::cout << n << ',' << fmt(cached) << ',' << fmt(cached * 1000.0 / nn) << ','
              << fmt(uncached) << ',' << fmt(uncached * 1000.0 / nn) << ','
              << fmt(uncached / cached) << '\n';
  }
  return 0;
}

AnomalySpec parse_anomaly(const std::string& text) {
  AnomalySpec a;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 4)
    throw CLI::ValidationError("--anomaly", "expected pos:magnitude[:duration[:kind]]");
  a.position = std::stoull(parts[0]);
  a.magnitude = std::stod(parts[1]);
  if (parts.size() >= 3) a.duration = std::stoull(parts[2]);
  if (parts.size() == 4) {
    if (parts[3] == "spike") a.kind = AnomalySpec::Kind::spike;
    else if (parts[3] == "burst") a.kind = AnomalySpec::Kind::burst;
    else throw CLI::ValidationError("--anomaly", "kind must be spike or burst");
  }
  return a;
}

AmplitudePoint parse_amplitude(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw CLI::ValidationError("--amplitude", "expected index:amplitude");
  AmplitudePoint p;
  p.index = std::stoull(text.substr(0, colon));
  p.amplitude = std::stod(text.substr(colon + 1));
  return p;
}

int cmd_synth(const SynthSpec& spec, const std::string& output) {
  const LabeledSeries s = generate(spec);
  if (output.empty() || output == "-") {
    serialize_series(s, std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    serialize_series(s, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"streaming subsequence anomaly detector"};
  app.require_subcommand(1);

  EngineFlags flags;
  std::string format_name = "csv";
  bool fill = false;
  std::int64_t period = 0;
  std::size_t jobs = 1;

  // detect
  auto* detect = app.add_subcommand("detect", "score a series, one record per point");
  std::string detect_input;
  std::string detect_out_dir;
  detect->add_option("input", detect_input, "series file, directory, or - for stdin")
      ->required();
  detect->add_option("--out-dir", detect_out_dir, "output directory for directory input");
  add_engine_flags(detect, flags);
  detect->add_option("--format", format_name, "input format")
      ->check(CLI::IsMember({"csv", "ndjson"}));
  detect->add_flag("--fill", fill, "fill missing timestamps before detection");
  detect->add_option("--period", period, "fill period in timestamps");
  detect->add_option("--jobs", jobs, "parallel series workers");

  // eval
  auto* eval = app.add_subcommand("eval", "detect labeled series and report scores");
  std::vector<std::string> eval_inputs;
  std::int64_t delay = 0;
  bool split_half_mode = false;
  bool exclude_filled = false;
  eval->add_option("inputs", eval_inputs, "series files or directories")->required();
  add_engine_flags(eval, flags);
  eval->add_option("--format", format_name, "input format")
      ->check(CLI::IsMember({"csv", "ndjson"}));
  eval->add_flag("--fill", fill, "fill missing timestamps before detection");
  eval->add_option("--period", period, "fill period in timestamps");
  eval->add_option("--delay,-q", delay, "detection delay budget");
  eval->add_flag("--split", split_half_mode, "stream everything, score the second half");
  eval->add_flag("--exclude-filled", exclude_filled, "skip filled points when counting");
  eval->add_option("--jobs", jobs, "parallel series workers");

  // bench
  auto* bench = app.add_subcommand("bench", "time cached vs unbounded detection");
  std::vector<std::size_t> lengths{10000, 20000, 50000};
  std::uint64_t bench_seed = 1234;
  bench->add_option("--lengths", lengths, "series lengths to measure");
  bench->add_option("--seed", bench_seed, "generator seed");
  add_engine_flags(bench, flags);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a labeled series");
  SynthSpec spec;
  std::string synth_output;
  std::string waveform_name = "sine";
  std::vector<std::string> anomaly_texts;
  std::vector<std::string> amplitude_texts;
  synth->add_option("--length", spec.length, "points to generate")->required();
  synth->add_option("--period", spec.period, "sine period in points");
  synth->add_option("--waveform", waveform_name, "sine or ar1")
      ->check(CLI::IsMember({"sine", "ar1"}));
  synth->add_option("--phi", spec.ar1_phi, "ar1 coefficient");
  synth->add_option("--noise", spec.noise_sigma, "observation noise sigma");
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--start", spec.start_timestamp, "first timestamp");
  synth->add_option("--step", spec.step_seconds, "seconds between points");
  synth->add_option("--anomaly", anomaly_texts,
                    "pos:magnitude[:duration[:kind]], repeatable");
  synth->add_option("--amplitude", amplitude_texts, "index:amplitude, repeatable");
  synth->add_option("--output,-o", synth_output, "output file, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    const SeriesFormat format =
        format_name == "csv" ? SeriesFormat::csv : SeriesFormat::ndjson;
    if (detect->parsed())
      return cmd_detect(flags, detect_input, detect_out_dir, format, fill, period, jobs);
    if (eval->parsed())
      return cmd_eval(flags, eval_inputs, format, fill, period, delay, split_half_mode,
                      exclude_filled, jobs);
    if (bench->parsed()) return cmd_bench(flags, lengths, bench_seed);
    if (synth->parsed()) {
      spec.waveform = waveform_name == "ar1" ? Waveform::ar1 : Waveform::sine;
      for (const auto& t : anomaly_texts) spec.anomalies.push_back(parse_anomaly(t));
      for (const auto& t : amplitude_texts)
        spec.amplitude.push_back(parse_amplitude(t));
      return cmd_synth(spec, synth_output);
    }
  } catch (const std::exception& e) {
    std::cerr << "ompad: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
