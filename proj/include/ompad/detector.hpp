#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ompad/distance.hpp"
#include "ompad/sliding_buffer.hpp"
#include "ompad/spectral_residual.hpp"
#include "ompad/stats.hpp"

namespace ompad {

enum class DistanceKind { mean_normalized, z_normalized };

// How a per-timestamp verdict is produced once the nearest neighbor is known.
//   significance          distance significance against the threshold
//   significance_with_sr  same, but a flagged neighbor delegates to saliency
//   mp_diff               first difference of the profile against a threshold
//   sr_only               saliency on every window, no profile at all
enum class DecisionRule { significance, significance_with_sr, mp_diff, sr_only };

enum class DecidedBy : std::uint8_t { warmup, ds, sr, degenerate, mp };

const char* to_string(DecidedBy d);
const char* to_string(DistanceKind k);
const char* to_string(DecisionRule r);

struct EngineConfig {
  std::size_t window = 48;     // subsequence length m
  std::size_t capacity = 240;  // cache length c; 0 keeps the whole history
  std::size_t ds_window = 48;  // significance strip l; clamped to window
  double threshold = 0.35;     // significance cut-off, in (0, 1)
  std::size_t exclusion = 0;   // trivial-match zone; 0 means window / 2
  std::size_t warmup_min = 0;  // admissible references required; 0 means window
  double mp_diff_threshold = 1.0;  // cut-off for DecisionRule::mp_diff
  DistanceKind distance = DistanceKind::mean_normalized;
  DecisionRule rule = DecisionRule::significance_with_sr;
  SrConfig sr;

  std::size_t effective_exclusion() const { return exclusion ? exclusion : window / 2; }
  std::size_t effective_warmup() const { return warmup_min ? warmup_min : window; }
  std::size_t effective_ds_window() const {
    return ds_window < window ? ds_window : window;
  }
  bool unbounded() const { return capacity == 0; }

  void validate() const;  // throws std::invalid_argument
};

// One record per ingested status. mp/ds are NaN where the stage that fills
// them did not run (warm-up, saliency path, profile-free modes); mp_index is
// -1 in the same situations.
struct DetectionOutcome {
  std::int64_t index = 0;
  double value = 0.0;
  double mp = std::numeric_limits<double>::quiet_NaN();
  std::int64_t mp_index = -1;
  double ds = std::numeric_limits<double>::quiet_NaN();
  int decision = 0;
  DecidedBy decided_by = DecidedBy::warmup;
};

struct DistanceProfileEntry {
  std::int64_t ref_start = -1;
  double distance = 0.0;
};

struct SignificanceResult {
  double value = 0.0;
  bool degenerate = false;
};

// Share of the trailing strip's deviation energy carried by its last point.
// Numerator is the strip's final term, so the ratio lives in [0, 1]. A
// denominator under epsilon means both windows end flat: 0 unless the final
// term alone is non-negligible.
SignificanceResult distance_significance(Subsequence query, Subsequence neighbor,
                                         std::size_t strip);

// First difference of a matrix profile; scores profile onsets instead of the
// plateau the raw profile forms across an anomaly. First element is 0.
std::vector<double> mp_diff_score(std::span<const double> profile);

// Streaming detector over a fixed-length cache of recent statuses. Each
// ingest updates the cached inner products with the sliding-dot-product
// recurrence (the oldest entry is recomputed directly; its predecessor left
// the cache), scans the admissible references for the nearest neighbor, and
// judges the new status per the configured rule.
class StreamDetector {
 public:
  explicit StreamDetector(EngineConfig cfg);

  DetectionOutcome ingest(double x);

  const EngineConfig& config() const { return cfg_; }
  std::int64_t next_index() const { return next_index_; }
  std::size_t cache_size() const { return stats_.size(); }
  std::int64_t oldest_index() const {
    return next_index_ - static_cast<std::int64_t>(stats_.size());
  }

  // Distances from the current query to every admissible cached reference,
  // oldest first. Empty while the cache cannot yet support a profile.
  std::vector<DistanceProfileEntry> distance_profile() const;

  // Significance between two cached windows, addressed by absolute index.
  SignificanceResult significance_between(std::int64_t query_start,
                                          std::int64_t neighbor_start) const;

  // Versioned JSON snapshot; restoring continues the stream bit-for-bit.
  std::string save_snapshot() const;
  static StreamDetector load_snapshot(const std::string& text);

 private:
  DetectionOutcome ingest_sr_only(std::int64_t t, double x);
  void update_qt(double x_t, std::int64_t q, std::int64_t oldest, bool slid);
  bool scan_profile(std::int64_t q, std::int64_t oldest, std::int64_t adm_count,
                    double& best_radicand, std::size_t& best_slot) const;
  Subsequence window_at(std::int64_t start) const;
  void store_label(std::int8_t label) { labels_.back() = label; }

  EngineConfig cfg_;
  std::size_t m_;
  std::size_t excl_;
  std::size_t warmup_;
  std::size_t strip_;
  std::size_t capacity_;  // RollingStatsBuffer::kUnbounded when unlimited
  RollingStatsBuffer stats_;
  SlidingBuffer<std::int8_t> labels_;  // -1 undecided, else the emitted decision
  std::vector<double> qt_;             // slot i: <window(oldest + i), current query>
  std::int64_t next_index_ = 0;
  double prev_mp_ = std::numeric_limits<double>::quiet_NaN();

  friend struct SnapshotAccess;
};

}  // namespace ompad
