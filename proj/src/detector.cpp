#include "ompad/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ompad {

const char* to_string(DecidedBy d) {
  switch (d) {
    case DecidedBy::warmup: return "warmup";
    case DecidedBy::ds: return "DS";
    case DecidedBy::sr: return "SR";
    case DecidedBy::degenerate: return "degenerate";
    case DecidedBy::mp: return "MP";
  }
  return "?";
}

const char* to_string(DistanceKind k) {
  return k == DistanceKind::mean_normalized ? "mean" : "znorm";
}

const char* to_string(DecisionRule r) {
  switch (r) {
    case DecisionRule::significance: return "significance";
    case DecisionRule::significance_with_sr: return "significance+sr";
    case DecisionRule::mp_diff: return "mp-diff";
    case DecisionRule::sr_only: return "sr-only";
  }
  return "?";
}

void EngineConfig::validate() const {
  if (window < 2) throw std::invalid_argument("window must be at least 2");
  if (!unbounded() && window + effective_exclusion() + 1 > capacity)
    throw std::invalid_argument("cache must hold at least window + exclusion + 1 statuses");
  if (effective_ds_window() < 1)
    throw std::invalid_argument("significance strip must be at least 1");
  if (rule == DecisionRule::significance || rule == DecisionRule::significance_with_sr) {
    if (!(threshold > 0.0 && threshold < 1.0))
      throw std::invalid_argument("significance threshold must lie in (0, 1)");
  }
  if (rule == DecisionRule::significance_with_sr || rule == DecisionRule::sr_only) {
    if (window < 2 * sr.extend_k || window < 2 * sr.mean_filter_q ||
        window < sr.extend_k + 2 || sr.score_window_z >= window ||
        sr.extend_k == 0 || sr.mean_filter_q == 0 || sr.score_window_z == 0)
      throw std::invalid_argument("window too short for the saliency fallback");
    if (!(sr.threshold > 0.0))
      throw std::invalid_argument("saliency threshold must be positive");
  }
}

SignificanceResult distance_significance(Subsequence query, Subsequence neighbor,
                                         std::size_t strip) {
  if (query.size() != neighbor.size())
    throw std::invalid_argument("subsequence length mismatch");
  if (query.empty()) throw std::invalid_argument("empty subsequence");
  const std::size_t m = query.size();
  const std::size_t l = strip < m ? strip : m;
  if (l == 0) throw std::invalid_argument("empty significance strip");

  double mu_q = 0.0, mu_n = 0.0;
  for (std::size_t w = m - l; w < m; ++w) {
    mu_q += query[w];
    mu_n += neighbor[w];
  }
  mu_q /= static_cast<double>(l);
  mu_n /= static_cast<double>(l);

  double denom = 0.0, last = 0.0;
  for (std::size_t w = m - l; w < m; ++w) {
    const double d = (query[w] - mu_q) - (neighbor[w] - mu_n);
    last = d * d;
    denom += last;
  }

  if (denom < kDegenerateEps)
    return {last < kDegenerateEps ? 0.0 : 1.0, true};
  return {std::clamp(last / denom, 0.0, 1.0), false};
}

std::vector<double> mp_diff_score(std::span<const double> profile) {
  std::vector<double> out(profile.size(), 0.0);
  for (std::size_t i = 1; i < profile.size(); ++i) out[i] = profile[i] - profile[i - 1];
  return out;
}

StreamDetector::StreamDetector(EngineConfig cfg)
    : cfg_(cfg),
      m_(cfg.window),
      excl_(cfg.effective_exclusion()),
      warmup_(cfg.effective_warmup()),
      strip_(cfg.effective_ds_window()),
      capacity_(cfg.unbounded() ? RollingStatsBuffer::kUnbounded : cfg.capacity),
      stats_(capacity_) {
  cfg_.validate();
}

namespace {

// Two-pass mean/variance of the anchored window, for the cases where prefix
// differencing has lost all the significant digits.
void direct_mean_var(const double* w, std::size_t m, double anchor, double& mean,
                     double& var) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) s += w[i] - anchor;
  mean = s / static_cast<double>(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = (w[i] - anchor) - mean;
    acc += d * d;
  }
  var = acc / static_cast<double>(m);
}

}  // namespace

Subsequence StreamDetector::window_at(std::int64_t start) const {
  const std::int64_t oldest = oldest_index();
  if (start < oldest ||
      start + static_cast<std::int64_t>(m_) > next_index_)
    throw std::invalid_argument("subsequence not in cache");
  return Subsequence(stats_.values_data() + (start - oldest), m_);
}

void StreamDetector::update_qt(double x_t, std::int64_t q, std::int64_t oldest,
                               bool slid) {
  // All inner products run on anchored values, matching the prefix sums.
  const double* v = stats_.values_data();
  const double a = stats_.anchor();
  const double cx_t = x_t - a;
  // First element of the previous query window; on the very first full window
  // there is no previous query and no slot consumes the value.
  const double cx_prev_q = q > oldest ? v[(q - 1) - oldest] - a : 0.0;
  const std::size_t m = m_;
  if (slid) {
    // The cache moved one step, so slot i now describes the reference one
    // index later; its value advances by the sliding-dot-product update
    // without any data movement.
    const std::size_t cnt = qt_.size();
    for (std::size_t i = 1; i < cnt; ++i)
      qt_[i] += cx_t * (v[i - 1 + m] - a) - cx_prev_q * (v[i - 1] - a);
  } else {
    qt_.push_back(0.0);
    for (std::size_t i = qt_.size() - 1; i >= 1; --i)
      qt_[i] = qt_[i - 1] + cx_t * (v[i - 1 + m] - a) - cx_prev_q * (v[i - 1] - a);
  }
  // The oldest slot's predecessor fell out of the cache; recompute directly.
  const double* qw = v + (q - oldest);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += (v[i] - a) * (qw[i] - a);
  qt_[0] = acc;
}

bool StreamDetector::scan_profile(std::int64_t q, std::int64_t oldest,
                                  std::int64_t adm_count, double& best_radicand,
                                  std::size_t& best_slot) const {
  const std::size_t adm = static_cast<std::size_t>(adm_count);
  const double* pre = stats_.prefix_data();
  const double* pre_sq = stats_.prefix_sq_data();
  const std::size_t m = m_;
  const double md = static_cast<double>(m);
  const double inv_m = 1.0 / md;

  const std::size_t q_slot = static_cast<std::size_t>(q - oldest);
  double mu_q, var_q;
  stats_.window_mean_var_centered(q_slot, m, mu_q, var_q);

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = adm;  // sentinel: none

  if (cfg_.distance == DistanceKind::mean_normalized) {
    // Slot 0 reads the lead totals; the rest difference neighboring prefixes.
    {
      const double sum = pre[m - 1] - stats_.lead();
      const double sum_sq = pre_sq[m - 1] - stats_.lead_sq();
      const double mu = sum * inv_m;
      double var = sum_sq * inv_m - mu * mu;
      if (var < 0.0) var = 0.0;
      const double rad = md * (var_q + var) - 2.0 * (qt_[0] - md * mu_q * mu);
      if (rad < best) {
        best = rad;
        best_i = 0;
      }
    }
    for (std::size_t i = 1; i < adm; ++i) {
      const double sum = pre[i + m - 1] - pre[i - 1];
      const double sum_sq = pre_sq[i + m - 1] - pre_sq[i - 1];
      const double mu = sum * inv_m;
      double var = sum_sq * inv_m - mu * mu;
      if (var < 0.0) var = 0.0;
      const double rad = md * (var_q + var) - 2.0 * (qt_[i] - md * mu_q * mu);
      if (rad < best) {
        best = rad;
        best_i = i;
      }
    }
  } else {
    const double* v = stats_.values_data();
    const double a = stats_.anchor();
    double mu_zq = mu_q;
    double var_zq = var_q;
    if (var_zq < kVarRecheck) direct_mean_var(v + q_slot, m, a, mu_zq, var_zq);
    const double sd_q = std::sqrt(var_zq);
    if (sd_q <= kDegenerateEps) return false;
    for (std::size_t i = 0; i < adm; ++i) {
      const double sum = pre[i + m - 1] - (i ? pre[i - 1] : stats_.lead());
      const double sum_sq = pre_sq[i + m - 1] - (i ? pre_sq[i - 1] : stats_.lead_sq());
      double mu = sum * inv_m;
      double var = sum_sq * inv_m - mu * mu;
      if (var < kVarRecheck) direct_mean_var(v + i, m, a, mu, var);
      const double sd = std::sqrt(var);
      if (sd <= kDegenerateEps) continue;  // reference too flat to normalize
      double rad = znorm_radicand(qt_[i], mu_zq, sd_q, mu, sd, m);
      if (rad < 0.0) rad = 0.0;
      if (rad < best) {
        best = rad;
        best_i = i;
      }
    }
    if (best_i == adm) return false;
  }

  best_radicand = best;
  best_slot = best_i;
  return true;
}

DetectionOutcome StreamDetector::ingest_sr_only(std::int64_t t, double x) {
  DetectionOutcome out;
  out.index = t;
  out.value = x;
  const std::int64_t q = t - static_cast<std::int64_t>(m_) + 1;
  if (q < oldest_index()) {
    out.decided_by = DecidedBy::warmup;
    store_label(0);
    return out;
  }
  out.decision = sr_decide(window_at(q), cfg_.sr) ? 1 : 0;
  out.decided_by = DecidedBy::sr;
  store_label(static_cast<std::int8_t>(out.decision));
  return out;
}

DetectionOutcome StreamDetector::ingest(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("non-finite status at index " +
                                std::to_string(next_index_));
  const std::int64_t t = next_index_++;
  const bool slid = stats_.at_capacity();
  stats_.push_back(x);
  labels_.push_back(-1);
  if (slid) labels_.pop_front();

  if (cfg_.rule == DecisionRule::sr_only) return ingest_sr_only(t, x);

  DetectionOutcome out;
  out.index = t;
  out.value = x;

  const std::int64_t oldest = oldest_index();
  const std::int64_t q = t - static_cast<std::int64_t>(m_) + 1;
  if (q < oldest) {  // no complete window yet
    out.decided_by = DecidedBy::warmup;
    store_label(0);
    return out;
  }
  update_qt(x, q, oldest, slid);

  const std::int64_t adm_count = q - static_cast<std::int64_t>(excl_) - oldest + 1;
  if (adm_count <= 0) {
    out.decided_by = DecidedBy::warmup;
    store_label(0);
    return out;
  }

  double best_rad;
  std::size_t best_slot;
  if (!scan_profile(q, oldest, adm_count, best_rad, best_slot)) {
    // Every candidate (or the query itself) was too flat for the configured
    // distance; nothing to judge against.
    out.decided_by = DecidedBy::degenerate;
    store_label(0);
    return out;
  }
  if (best_rad < -kRadicandGuard)
    throw std::logic_error("window stats and inner product disagree (negative radicand)");
  out.mp = std::sqrt(best_rad < 0.0 ? 0.0 : best_rad);
  out.mp_index = oldest + static_cast<std::int64_t>(best_slot);

  const bool warm = adm_count < static_cast<std::int64_t>(warmup_);
  const double prev_mp = prev_mp_;
  prev_mp_ = out.mp;

  if (warm) {
    out.decided_by = DecidedBy::warmup;
    store_label(0);
    return out;
  }

  switch (cfg_.rule) {
    case DecisionRule::mp_diff: {
      const double score = std::isnan(prev_mp) ? 0.0 : out.mp - prev_mp;
      out.decision = score > cfg_.mp_diff_threshold ? 1 : 0;
      out.decided_by = DecidedBy::mp;
      break;
    }
    case DecisionRule::significance:
    case DecisionRule::significance_with_sr: {
      const std::int64_t neighbor_last =
          out.mp_index + static_cast<std::int64_t>(m_) - 1;
      const std::int8_t neighbor_label = labels_[static_cast<std::size_t>(neighbor_last - oldest)];
      if (cfg_.rule == DecisionRule::significance_with_sr && neighbor_label == 1) {
        out.decision = sr_decide(window_at(q), cfg_.sr) ? 1 : 0;
        out.decided_by = DecidedBy::sr;
      } else {
        const SignificanceResult r =
            distance_significance(window_at(q), window_at(out.mp_index), strip_);
        out.ds = r.value;
        out.decision = r.value > cfg_.threshold ? 1 : 0;
        out.decided_by = r.degenerate ? DecidedBy::degenerate : DecidedBy::ds;
      }
      break;
    }
    default:
      break;
  }
  store_label(static_cast<std::int8_t>(out.decision));
  return out;
}

std::vector<DistanceProfileEntry> StreamDetector::distance_profile() const {
  std::vector<DistanceProfileEntry> out;
  if (next_index_ == 0) return out;
  const std::int64_t t = next_index_ - 1;
  const std::int64_t oldest = oldest_index();
  const std::int64_t q = t - static_cast<std::int64_t>(m_) + 1;
  if (q < oldest) return out;
  const std::int64_t adm_count = q - static_cast<std::int64_t>(excl_) - oldest + 1;
  if (adm_count <= 0) return out;

  auto stats_at = [&](std::size_t slot) {
    WindowStats w = stats_.window_stats_centered(slot, m_);
    if (cfg_.distance == DistanceKind::z_normalized && w.variance() < kVarRecheck) {
      double mu, var;
      direct_mean_var(stats_.values_data() + slot, m_, stats_.anchor(), mu, var);
      w.mean = mu;
      w.stddev = std::sqrt(var);
    }
    return w;
  };

  const WindowStats sq = stats_at(static_cast<std::size_t>(q - oldest));
  out.reserve(static_cast<std::size_t>(adm_count));
  for (std::int64_t i = 0; i < adm_count; ++i) {
    const WindowStats ref = stats_at(static_cast<std::size_t>(i));
    const double ip = qt_[static_cast<std::size_t>(i)];
    if (cfg_.distance == DistanceKind::z_normalized) {
      if (sq.stddev <= kDegenerateEps || ref.stddev <= kDegenerateEps) continue;
      out.push_back({oldest + i, znorm_distance_via_stats(ip, ref, sq, m_)});
    } else {
      out.push_back({oldest + i, distance_via_stats(ip, ref, sq, m_)});
    }
  }
  return out;
}

SignificanceResult StreamDetector::significance_between(std::int64_t query_start,
                                                        std::int64_t neighbor_start) const {
  return distance_significance(window_at(query_start), window_at(neighbor_start), strip_);
}

}  // namespace ompad
