#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ompad/sliding_buffer.hpp"

namespace ompad {

// Moments of one fixed-length window. Population variance throughout:
// var = sum_sq/len - mean^2, clamped at zero against rounding.
struct WindowStats {
  double mean = 0.0;
  double stddev = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;

  double variance() const { return stddev * stddev; }
};

// Value window plus running prefix sums, so any sub-window's stats come out
// in O(1). Values are stored raw; the prefix sums accumulate x - anchor,
// where the anchor is the first value ever pushed. Centering costs nothing
// and keeps the accumulated terms at signal scale: without it a series
// riding on a large offset beta loses ~beta^2*eps per push to rounding,
// which the downstream subtractions amplify far past 1e-9.
// Prefix entries are cumulative since the last rebase; `lead_` holds the
// cumulative total just before the current front. The whole state is
// recomputed from the stored values every `capacity` pushes, which keeps the
// drift of the incremental path bounded.
class RollingStatsBuffer {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  explicit RollingStatsBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw std::invalid_argument("capacity must be positive");
  }

  void push_back(double x) {
    if (!anchored_) {
      anchor_ = x;
      anchored_ = true;
    }
    const double cx = x - anchor_;
    values_.push_back(x);
    prefix_.push_back((prefix_.empty() ? lead_ : prefix_.back()) + cx);
    prefix_sq_.push_back((prefix_sq_.empty() ? lead_sq_ : prefix_sq_.back()) + cx * cx);
    if (values_.size() > capacity_) {
      lead_ = prefix_.front();
      lead_sq_ = prefix_sq_.front();
      values_.pop_front();
      prefix_.pop_front();
      prefix_sq_.pop_front();
    }
    if (++since_rebuild_ >= values_.size()) {
      rebuild();
      since_rebuild_ = 0;
    }
  }

  std::size_t size() const { return values_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool at_capacity() const { return values_.size() >= capacity_; }

  double operator[](std::size_t i) const { return values_[i]; }
  const double* values_data() const { return values_.data(); }
  double anchor() const { return anchor_; }

  // Raw prefix access for streaming inner loops; window [s, s+len) sums are
  // prefix[s+len-1] - (s ? prefix[s-1] : lead()). Sums are of x - anchor().
  const double* prefix_data() const { return prefix_.data(); }
  const double* prefix_sq_data() const { return prefix_sq_.data(); }
  double lead() const { return lead_; }
  double lead_sq() const { return lead_sq_; }

  // Mean and variance of the anchored values. Variance is shift-invariant,
  // so this is also the variance of the raw window.
  void window_mean_var_centered(std::size_t start, std::size_t len, double& mean,
                                double& var) const {
    check_window(start, len);
    const double s = prefix_[start + len - 1] - (start ? prefix_[start - 1] : lead_);
    const double ss = prefix_sq_[start + len - 1] - (start ? prefix_sq_[start - 1] : lead_sq_);
    const double n = static_cast<double>(len);
    mean = s / n;
    var = ss / n - mean * mean;
    if (var < 0.0) var = 0.0;
  }

  void window_mean_var(std::size_t start, std::size_t len, double& mean, double& var) const {
    window_mean_var_centered(start, len, mean, var);
    mean += anchor_;
  }

  WindowStats window_stats_centered(std::size_t start, std::size_t len) const {
    check_window(start, len);
    WindowStats w;
    w.sum = prefix_[start + len - 1] - (start ? prefix_[start - 1] : lead_);
    w.sum_sq = prefix_sq_[start + len - 1] - (start ? prefix_sq_[start - 1] : lead_sq_);
    const double n = static_cast<double>(len);
    w.mean = w.sum / n;
    double var = w.sum_sq / n - w.mean * w.mean;
    if (var < 0.0) var = 0.0;
    w.stddev = std::sqrt(var);
    return w;
  }

  WindowStats window_stats(std::size_t start, std::size_t len) const {
    WindowStats w = window_stats_centered(start, len);
    const double n = static_cast<double>(len);
    // Undo the anchoring: sum(x) = sum(cx) + n*a, sum(x^2) = sum(cx^2) + 2a*sum(cx) + n*a^2.
    w.sum_sq += anchor_ * (2.0 * w.sum + n * anchor_);
    w.sum += n * anchor_;
    w.mean += anchor_;
    return w;
  }

  // Snapshot plumbing for engine save/restore; keeps incremental state
  // bit-identical across a reload.
  struct State {
    std::vector<double> values;
    std::vector<double> prefix;
    std::vector<double> prefix_sq;
    double lead = 0.0;
    double lead_sq = 0.0;
    double anchor = 0.0;
    bool anchored = false;
    std::uint64_t since_rebuild = 0;
  };

  State state() const {
    return State{values_.to_vector(), prefix_.to_vector(), prefix_sq_.to_vector(),
                 lead_, lead_sq_, anchor_, anchored_, since_rebuild_};
  }

  void restore(const State& s) {
    if (s.prefix.size() != s.values.size() || s.prefix_sq.size() != s.values.size())
      throw std::invalid_argument("inconsistent stats state");
    if (!s.values.empty() && !s.anchored)
      throw std::invalid_argument("inconsistent stats state");
    values_.assign(s.values);
    prefix_.assign(s.prefix);
    prefix_sq_.assign(s.prefix_sq);
    lead_ = s.lead;
    lead_sq_ = s.lead_sq;
    anchor_ = s.anchor;
    anchored_ = s.anchored;
    since_rebuild_ = s.since_rebuild;
  }

 private:
  void check_window(std::size_t start, std::size_t len) const {
    if (len == 0) throw std::invalid_argument("empty window");
    if (start + len > values_.size()) throw std::invalid_argument("window outside buffer");
  }

  void rebuild() {
    lead_ = 0.0;
    lead_sq_ = 0.0;
    double run = 0.0, run_sq = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double cx = values_[i] - anchor_;
      run += cx;
      run_sq += cx * cx;
      prefix_[i] = run;
      prefix_sq_[i] = run_sq;
    }
  }

  SlidingBuffer<double> values_;
  SlidingBuffer<double> prefix_;
  SlidingBuffer<double> prefix_sq_;
  double lead_ = 0.0;
  double lead_sq_ = 0.0;
  double anchor_ = 0.0;
  bool anchored_ = false;
  std::size_t capacity_;
  std::uint64_t since_rebuild_ = 0;
};

}  // namespace ompad
