#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ompad/detector.hpp"

namespace ompad {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "ompad-engine-snapshot";
constexpr int kVersion = 1;

DistanceKind distance_from(const std::string& s) {
  if (s == "mean") return DistanceKind::mean_normalized;
  if (s == "znorm") return DistanceKind::z_normalized;
  throw std::invalid_argument("unknown distance kind: " + s);
}

DecisionRule rule_from(const std::string& s) {
  if (s == "significance") return DecisionRule::significance;
  if (s == "significance+sr") return DecisionRule::significance_with_sr;
  if (s == "mp-diff") return DecisionRule::mp_diff;
  if (s == "sr-only") return DecisionRule::sr_only;
  throw std::invalid_argument("unknown decision rule: " + s);
}

json config_to_json(const EngineConfig& c) {
  return json{{"window", c.window},
              {"capacity", c.capacity},
              {"ds_window", c.ds_window},
              {"threshold", c.threshold},
              {"exclusion", c.exclusion},
              {"warmup_min", c.warmup_min},
              {"mp_diff_threshold", c.mp_diff_threshold},
              {"distance", to_string(c.distance)},
              {"rule", to_string(c.rule)},
              {"sr",
               json{{"extend_k", c.sr.extend_k},
                    {"mean_filter_q", c.sr.mean_filter_q},
                    {"score_window_z", c.sr.score_window_z},
                    {"threshold", c.sr.threshold},
                    {"eps", c.sr.eps}}}};
}

EngineConfig config_from_json(const json& j) {
  EngineConfig c;
  c.window = j.at("window").get<std::size_t>();
  c.capacity = j.at("capacity").get<std::size_t>();
  c.ds_window = j.at("ds_window").get<std::size_t>();
  c.threshold = j.at("threshold").get<double>();
  c.exclusion = j.at("exclusion").get<std::size_t>();
  c.warmup_min = j.at("warmup_min").get<std::size_t>();
  c.mp_diff_threshold = j.at("mp_diff_threshold").get<double>();
  c.distance = distance_from(j.at("distance").get<std::string>());
  c.rule = rule_from(j.at("rule").get<std::string>());
  const json& sr = j.at("sr");
  c.sr.extend_k = sr.at("extend_k").get<std::size_t>();
  c.sr.mean_filter_q = sr.at("mean_filter_q").get<std::size_t>();
  c.sr.score_window_z = sr.at("score_window_z").get<std::size_t>();
  c.sr.threshold = sr.at("threshold").get<double>();
  c.sr.eps = sr.at("eps").get<double>();
  return c;
}

}  // namespace

// Private-state bridge; keeps the JSON layout next to the fields it mirrors.
struct SnapshotAccess {
  static json to_json(const StreamDetector& d) {
    const RollingStatsBuffer::State s = d.stats_.state();
    json state{{"next_index", d.next_index_},
               {"values", s.values},
               {"prefix", s.prefix},
               {"prefix_sq", s.prefix_sq},
               {"lead", s.lead},
               {"lead_sq", s.lead_sq},
               {"anchor", s.anchor},
               {"anchored", s.anchored},
               {"since_rebuild", s.since_rebuild},
               {"labels", d.labels_.to_vector()},
               {"qt", d.qt_}};
    // NaN would serialize as null; track presence explicitly.
    if (!std::isnan(d.prev_mp_)) state["prev_mp"] = d.prev_mp_;
    return json{{"format", kFormat}, {"version", kVersion},
                {"config", config_to_json(d.cfg_)}, {"state", state}};
  }

  static StreamDetector from_json(const json& j) {
    if (j.value("format", "") != kFormat)
      throw std::invalid_argument("not an engine snapshot");
    if (j.at("version").get<int>() != kVersion)
      throw std::invalid_argument("unsupported snapshot version");
    StreamDetector d(config_from_json(j.at("config")));
    const json& state = j.at("state");
    RollingStatsBuffer::State s;
    s.values = state.at("values").get<std::vector<double>>();
    s.prefix = state.at("prefix").get<std::vector<double>>();
    s.prefix_sq = state.at("prefix_sq").get<std::vector<double>>();
    s.lead = state.at("lead").get<double>();
    s.lead_sq = state.at("lead_sq").get<double>();
    s.anchor = state.at("anchor").get<double>();
    s.anchored = state.at("anchored").get<bool>();
    s.since_rebuild = state.at("since_rebuild").get<std::uint64_t>();
    d.stats_.restore(s);
    d.labels_.assign(state.at("labels").get<std::vector<std::int8_t>>());
    d.qt_ = state.at("qt").get<std::vector<double>>();
    d.next_index_ = state.at("next_index").get<std::int64_t>();
    if (state.contains("prev_mp")) d.prev_mp_ = state.at("prev_mp").get<double>();
    if (d.labels_.size() != d.stats_.size())
      throw std::invalid_argument("inconsistent snapshot state");
    return d;
  }
};

std::string StreamDetector::save_snapshot() const {
  return SnapshotAccess::to_json(*this).dump();
}

StreamDetector StreamDetector::load_snapshot(const std::string& text) {
  return SnapshotAccess::from_json(nlohmann::json::parse(text));
}

}  // namespace ompad
