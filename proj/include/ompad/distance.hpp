#pragma once

#include <cstddef>
#include <span>

#include "ompad/stats.hpp"

namespace ompad {

using Subsequence = std::span<const double>;

// Degeneracy threshold shared by every near-zero test in the project.
inline constexpr double kDegenerateEps = 1e-12;

// How much negative a squared-distance radicand may go before it stops being
// floating-point noise and starts being a corrupted incremental state.
inline constexpr double kRadicandGuard = 1e-9;

// Prefix-sum differencing cancels catastrophically on near-flat windows, so a
// variance this small cannot be trusted for degeneracy tests or z-norm
// scaling; recompute it directly from the raw values instead.
inline constexpr double kVarRecheck = 1e-8;

double dot(Subsequence a, Subsequence b);

// Euclidean distance after subtracting each window's own mean. Offset shifts
// cancel; amplitude differences survive, unlike the z-normalized form.
double mean_normalized_distance(Subsequence a, Subsequence b);

// Classic z-normalized distance (mean removed, scaled by the standard
// deviation). Throws when either window is too flat to normalize.
double znorm_distance(Subsequence a, Subsequence b);

// Radicand of the stats-form mean-normalized distance:
//   m*(var_a + var_b) - 2*(ip - m*mu_a*mu_b)
// Shared by the checked wrapper and the streaming scan so both agree.
inline double mean_norm_radicand(double ip, double mu_a, double var_a, double mu_b,
                                 double var_b, std::size_t m) {
  const double md = static_cast<double>(m);
  return md * (var_a + var_b) - 2.0 * (ip - md * mu_a * mu_b);
}

// Radicand of the stats-form z-normalized distance:
//   2m * (1 - (ip - m*mu_a*mu_b) / (m*sd_a*sd_b))
inline double znorm_radicand(double ip, double mu_a, double sd_a, double mu_b,
                             double sd_b, std::size_t m) {
  const double md = static_cast<double>(m);
  return 2.0 * md * (1.0 - (ip - md * mu_a * mu_b) / (md * sd_a * sd_b));
}

// Distance from window stats plus the cross inner product. Tiny negative
// radicands (>= -kRadicandGuard) clamp to zero; anything lower throws,
// because it means the incremental inner product and the window stats no
// longer describe the same data.
double distance_via_stats(double ip, const WindowStats& a, const WindowStats& b,
                          std::size_t m);

// Stats-form z-normalized distance. Throws on degenerate windows; negative
// radicands clamp to zero (the correlation ratio may overshoot 1 by rounding).
double znorm_distance_via_stats(double ip, const WindowStats& a, const WindowStats& b,
                                std::size_t m);

// One step of the sliding-dot-product recurrence: drop the departing product,
// add the arriving one.
inline double update_inner_product(double prev, double x_old_a, double x_old_b,
                                   double x_new_a, double x_new_b) {
  return prev - x_old_a * x_old_b + x_new_a * x_new_b;
}

}  // namespace ompad
