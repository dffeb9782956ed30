#include "ompad/distance.hpp"

#include <cmath>
#include <stdexcept>

namespace ompad {

namespace {

void check_pair(Subsequence a, Subsequence b) {
  if (a.size() != b.size()) throw std::invalid_argument("subsequence length mismatch");
  if (a.empty()) throw std::invalid_argument("empty subsequence");
}

double mean_of(Subsequence v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double dot(Subsequence a, Subsequence b) {
  check_pair(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double mean_normalized_distance(Subsequence a, Subsequence b) {
  check_pair(a, b);
  const double mu_a = mean_of(a);
  const double mu_b = mean_of(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - mu_a) - (b[i] - mu_b);
    s += d * d;
  }
  return std::sqrt(s);
}

double znorm_distance(Subsequence a, Subsequence b) {
  check_pair(a, b);
  const double n = static_cast<double>(a.size());
  const double mu_a = mean_of(a);
  const double mu_b = mean_of(b);
  double va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    va += (a[i] - mu_a) * (a[i] - mu_a);
    vb += (b[i] - mu_b) * (b[i] - mu_b);
  }
  const double sd_a = std::sqrt(va / n);
  const double sd_b = std::sqrt(vb / n);
  if (sd_a <= kDegenerateEps || sd_b <= kDegenerateEps)
    throw std::domain_error("degenerate subsequence: standard deviation below epsilon");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - mu_a) / sd_a - (b[i] - mu_b) / sd_b;
    s += d * d;
  }
  return std::sqrt(s);
}

double distance_via_stats(double ip, const WindowStats& a, const WindowStats& b,
                          std::size_t m) {
  if (m == 0) throw std::invalid_argument("window length must be positive");
  double rad = mean_norm_radicand(ip, a.mean, a.variance(), b.mean, b.variance(), m);
  if (rad < -kRadicandGuard)
    throw std::logic_error("window stats and inner product disagree (negative radicand)");
  if (rad < 0.0) rad = 0.0;
  return std::sqrt(rad);
}

double znorm_distance_via_stats(double ip, const WindowStats& a, const WindowStats& b,
                                std::size_t m) {
  if (m == 0) throw std::invalid_argument("window length must be positive");
  if (a.stddev <= kDegenerateEps || b.stddev <= kDegenerateEps)
    throw std::domain_error("degenerate subsequence: standard deviation below epsilon");
  const double md = static_cast<double>(m);
  double rad = znorm_radicand(ip, a.mean, a.stddev, b.mean, b.stddev, m);
  // For perfectly correlated windows the radicand is pure cancellation noise:
  // its terms are of size |ip| + m|mu_a mu_b| + m sd_a sd_b while the true
  // value is 0, so anything below that scale times a generous epsilon is
  // indistinguishable from zero. Without the floor, sqrt turns ~1e-16 of
  // noise into ~1e-8 of spurious distance.
  const double term_scale =
      std::abs(ip) + md * (std::abs(a.mean * b.mean) + a.stddev * b.stddev);
  const double floor = 2.0 * term_scale / (a.stddev * b.stddev) * 1e-12;
  if (rad < floor) rad = 0.0;
  return std::sqrt(rad);
}

}  // namespace ompad
