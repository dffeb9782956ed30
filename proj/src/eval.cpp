#include "ompad/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ompad {

EvalReport& EvalReport::operator+=(const EvalReport& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  wall_time_s += other.wall_time_s;
  return *this;
}

namespace {

void check_args(std::span<const std::uint8_t> labels,
                std::span<const std::uint8_t> predictions, int delay) {
  if (labels.size() != predictions.size())
    throw std::invalid_argument("labels and predictions differ in length");
  if (delay < 1) throw std::invalid_argument("delay must be at least 1");
}

}  // namespace

std::vector<std::uint8_t> adjust_predictions(std::span<const std::uint8_t> labels,
                                             std::span<const std::uint8_t> predictions,
                                             int delay) {
  check_args(labels, predictions, delay);
  std::vector<std::uint8_t> adjusted(predictions.begin(), predictions.end());
  const std::size_t n = labels.size();
  std::size_t i = 0;
  while (i < n) {
    if (!labels[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && labels[j]) ++j;  // segment is [i, j)
    const std::size_t budget = std::min<std::size_t>(static_cast<std::size_t>(delay), j - i);
    bool hit = false;
    for (std::size_t k = i; k < i + budget; ++k) {
      if (predictions[k]) {
        hit = true;
        break;
      }
    }
    const std::uint8_t fill = hit ? 1 : 0;
    for (std::size_t k = i; k < j; ++k) adjusted[k] = fill;
    i = j;
  }
  return adjusted;
}

EvalReport score(std::span<const std::uint8_t> labels,
                 std::span<const std::uint8_t> predictions, int delay) {
  return score(labels, predictions, {}, delay);
}

EvalReport score(std::span<const std::uint8_t> labels,
                 std::span<const std::uint8_t> predictions,
                 std::span<const std::uint8_t> exclude, int delay) {
  if (!exclude.empty() && exclude.size() != labels.size())
    throw std::invalid_argument("exclude mask and labels differ in length");
  const std::vector<std::uint8_t> adjusted = adjust_predictions(labels, predictions, delay);
  EvalReport report;
  report.delay = delay;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!exclude.empty() && exclude[i]) continue;
    if (labels[i] && adjusted[i]) ++report.tp;
    else if (!labels[i] && adjusted[i]) ++report.fp;
    else if (labels[i] && !adjusted[i]) ++report.fn;
  }
  return report;
}

int delay_for(Granularity g, std::optional<int> override) {
  if (override) {
    if (*override < 1) throw std::invalid_argument("delay must be at least 1");
    return *override;
  }
  if (g.is_minute()) return 7;
  if (g.is_hour()) return 3;
  throw std::invalid_argument("no default delay for a " + std::to_string(g.seconds) +
                              "s step; pass one explicitly");
}

}  // namespace ompad
