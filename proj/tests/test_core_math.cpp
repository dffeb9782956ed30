#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ompad/distance.hpp"
#include "ompad/stats.hpp"
#include "oracle.hpp"

using namespace ompad;

namespace {

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double lo = -5.0,
                                  double hi = 5.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

WindowStats stats_of(std::span<const double> v) {
  RollingStatsBuffer buf(RollingStatsBuffer::kUnbounded);
  for (double x : v) buf.push_back(x);
  return buf.window_stats(0, v.size());
}

}  // namespace

TEST_CASE("mean-normalized distance worked values") {
  const std::vector<double> a{1, 2, 3};
  CHECK(mean_normalized_distance(a, a) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> zeros{0, 0};
  const std::vector<double> fives{5, 5};
  CHECK(mean_normalized_distance(zeros, fives) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> up{0, 2};
  CHECK(mean_normalized_distance(up, zeros) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("mean-normalized distance is exactly symmetric") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_series(rng, 48);
    const auto b = random_series(rng, 48);
    CHECK(mean_normalized_distance(a, b) == mean_normalized_distance(b, a));
  }
}

TEST_CASE("mean-normalized distance offset invariance and scale covariance") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    auto a = random_series(rng, 48);
    auto b = random_series(rng, 48);
    const double d = mean_normalized_distance(a, b);

    auto a_off = a;
    auto b_off = b;
    for (double& x : a_off) x += 123.456;
    for (double& x : b_off) x += 123.456;
    CHECK(rel_err(mean_normalized_distance(a_off, b_off), d) < 1e-9);

    const double alpha = 3.25;
    auto a_sc = a;
    auto b_sc = b;
    for (double& x : a_sc) x *= alpha;
    for (double& x : b_sc) x *= alpha;
    CHECK(rel_err(mean_normalized_distance(a_sc, b_sc), alpha * d) < 1e-9);
  }
}

TEST_CASE("distance length mismatch and empty input are usage errors") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{1, 2};
  CHECK_THROWS_AS(mean_normalized_distance(a, b), std::invalid_argument);
  CHECK_THROWS_AS(znorm_distance(a, b), std::invalid_argument);
  const std::vector<double> empty;
  CHECK_THROWS_AS(mean_normalized_distance(empty, empty), std::invalid_argument);
}

TEST_CASE("stats-form distance matches the worked value") {
  WindowStats sa{1.0, 1.0, 2.0, 4.0};
  WindowStats sb{0.0, 0.0, 0.0, 0.0};
  CHECK(distance_via_stats(0.0, sa, sb, 2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("stats form equals direct form on random windows") {
  std::mt19937_64 rng(13);
  for (const std::size_t m : {std::size_t{2}, std::size_t{48}, std::size_t{2880}}) {
    const int cases = m == 2880 ? 50 : 400;
    for (int i = 0; i < cases; ++i) {
      const auto a = random_series(rng, m);
      const auto b = random_series(rng, m);
      const double ip = dot(a, b);
      const double direct = mean_normalized_distance(a, b);
      const double via = distance_via_stats(ip, stats_of(a), stats_of(b), m);
      CHECK(rel_err(direct, via) < 1e-9);
    }
  }
}

TEST_CASE("self distance through stats is zero") {
  // Integer-valued window: every sum is exactly representable, so the
  // radicand cancels to exactly zero rather than to rounding noise.
  std::vector<double> ramp(48);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i % 16);
  CHECK(distance_via_stats(dot(ramp, ramp), stats_of(ramp), stats_of(ramp), 48) == 0.0);

  // On arbitrary reals the radicand is a difference of ~equal O(m) terms, so
  // the result bottoms out near sqrt(m*eps), not at 1e-9.
  std::mt19937_64 rng(14);
  const auto a = random_series(rng, 48);
  CHECK(distance_via_stats(dot(a, a), stats_of(a), stats_of(a), 48) < 1e-6);
}

TEST_CASE("wildly inconsistent stats and inner product are a hard error") {
  WindowStats sa{0.0, 1.0, 0.0, 48.0};
  WindowStats sb{0.0, 1.0, 0.0, 48.0};
  // ip far above what any pair with these stats could produce
  CHECK_THROWS_AS(distance_via_stats(1e6, sa, sb, 48), std::logic_error);
}

TEST_CASE("inner product update worked values") {
  CHECK(update_inner_product(11.0, 1.0, 3.0, 5.0, 6.0) == 38.0);
  CHECK(update_inner_product(7.5, 2.0, 3.0, 2.0, 3.0) == 7.5);
}

TEST_CASE("chained inner product updates track the direct dot product") {
  std::mt19937_64 rng(15);
  const std::size_t m = 48;
  const std::size_t steps = 10000;
  const auto x = random_series(rng, steps + m);
  const auto y = random_series(rng, steps + m);

  double ip = dot(std::span(x).first(m), std::span(y).first(m));
  for (std::size_t s = 1; s <= steps; ++s) {
    ip = update_inner_product(ip, x[s - 1], y[s - 1], x[s - 1 + m], y[s - 1 + m]);
    if (s % 997 == 0 || s == steps) {
      const double direct =
          dot(std::span(x).subspan(s, m), std::span(y).subspan(s, m));
      CHECK(rel_err(ip, direct) < 1e-9);
    }
  }
}

TEST_CASE("z-normalized distance basics") {
  std::mt19937_64 rng(16);
  const auto a = random_series(rng, 48);
  CHECK(znorm_distance(a, a) == doctest::Approx(0.0).epsilon(1e-9));

  auto affine = a;
  for (double& v : affine) v = 2.5 * v + 17.0;
  CHECK(std::abs(znorm_distance(a, affine)) < 1e-9);

  const std::vector<double> flat(48, 3.0);
  CHECK_THROWS_AS(znorm_distance(a, flat), std::domain_error);
}

TEST_CASE("z-normalized direct form equals stats form") {
  std::mt19937_64 rng(17);
  for (const std::size_t m : {std::size_t{2}, std::size_t{48}, std::size_t{2880}}) {
    const int cases = m == 2880 ? 50 : 400;
    for (int i = 0; i < cases; ++i) {
      const auto a = random_series(rng, m);
      const auto b = random_series(rng, m);
      const double direct = znorm_distance(a, b);
      const double via = znorm_distance_via_stats(dot(a, b), stats_of(a), stats_of(b), m);
      CHECK(rel_err(direct, via) < 1e-9);
    }
  }
}

TEST_CASE("rolling stats windows match direct summation") {
  std::mt19937_64 rng(18);
  const auto xs = random_series(rng, 2000);
  RollingStatsBuffer buf(240);
  std::size_t pushed = 0;
  for (double x : xs) {
    buf.push_back(x);
    ++pushed;
    if (pushed % 37 != 0 || buf.size() < 48) continue;
    const std::size_t start = pushed % (buf.size() - 47);
    const WindowStats w = buf.window_stats(start, 48);
    const std::size_t abs_start = pushed - buf.size() + start;
    const auto window = std::span(xs).subspan(abs_start, 48);
    const WindowStats direct = stats_of(window);
    CHECK(rel_err(w.mean, direct.mean) < 1e-9);
    CHECK(std::abs(w.stddev - direct.stddev) < 1e-9);
    CHECK(rel_err(w.sum, direct.sum) < 1e-9);
    CHECK(rel_err(w.sum_sq, direct.sum_sq) < 1e-9);
  }
}

TEST_CASE("population variance identity holds") {
  std::mt19937_64 rng(19);
  const auto xs = random_series(rng, 300);
  const WindowStats w = stats_of(std::span(xs).subspan(10, 100));
  CHECK(std::abs(w.variance() - (w.sum_sq / 100.0 - w.mean * w.mean)) < 1e-9);
}

TEST_CASE("prefix state equals a fresh recomputation after each full cycle") {
  std::mt19937_64 rng(20);
  const std::size_t c = 97;
  // Recomputation fires on pushes c+1, 2c+1, ...; land exactly on one.
  const auto xs = random_series(rng, 3 * c + 1);
  RollingStatsBuffer buf(c);
  for (double x : xs) buf.push_back(x);

  const double* vals = buf.values_data();
  const double* pre = buf.prefix_data();
  const double* pre_sq = buf.prefix_sq_data();
  CHECK(buf.anchor() == xs[0]);
  CHECK(buf.lead() == 0.0);
  CHECK(buf.lead_sq() == 0.0);
  double run = 0.0, run_sq = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double cx = vals[i] - buf.anchor();
    run += cx;
    run_sq += cx * cx;
    CHECK(pre[i] == run);
    CHECK(pre_sq[i] == run_sq);
  }
}

TEST_CASE("empty or out-of-range window requests are usage errors") {
  RollingStatsBuffer buf(64);
  for (int i = 0; i < 10; ++i) buf.push_back(static_cast<double>(i));
  CHECK_THROWS_AS(buf.window_stats(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(buf.window_stats(5, 10), std::invalid_argument);
  CHECK_THROWS_AS(RollingStatsBuffer(0), std::invalid_argument);
}
