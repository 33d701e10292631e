#include "mlwng/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mlwng {

SampleSchedule::SampleSchedule(double points_per_decade)
    : ratio_(std::pow(10.0, 1.0 / points_per_decade)) {
  if (!(points_per_decade > 0.0)) {
    throw std::invalid_argument("points per decade must be > 0");
  }
}

std::uint64_t SampleSchedule::next_after(std::uint64_t step) const {
  if (step < 1) return 1;
  // Smallest i with ceil(ratio^i) > step; start from the log estimate and
  // walk forward to absorb rounding.
  const double estimate = std::floor(std::log(static_cast<double>(step)) / std::log(ratio_));
  double i = std::max(0.0, estimate - 2.0);
  for (;; i += 1.0) {
    const auto candidate = static_cast<std::uint64_t>(std::ceil(std::pow(ratio_, i) - 1e-9));
    if (candidate > step) return candidate;
  }
}

std::vector<std::uint64_t> SampleSchedule::steps_up_to(std::uint64_t horizon) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = next_after(0); s <= horizon; s = next_after(s)) out.push_back(s);
  return out;
}

namespace {

MetricsSample to_sample(const MetricsObservation& obs) {
  MetricsSample s;
  s.step = obs.step;
  s.n_total = obs.n_total;
  s.n_diff = obs.n_diff;
  s.success_rate = obs.bin_interactions == 0
                       ? 0.0
                       : static_cast<double>(obs.bin_successes) /
                             static_cast<double>(obs.bin_interactions);
  return s;
}

}  // namespace

void MetricsSeries::record(const MetricsObservation& obs) {
  if (!samples_.empty() && obs.step <= samples_.back().step) {
    throw std::invalid_argument("sample step " + std::to_string(obs.step) +
                                " does not follow step " + std::to_string(samples_.back().step));
  }
  samples_.push_back(to_sample(obs));
}

void MetricsSeries::finish(const MetricsObservation& obs) {
  if (!samples_.empty() && samples_.back().step == obs.step) {
    final_ = samples_.back();
    return;
  }
  record(obs);
  final_ = samples_.back();
}

std::optional<std::uint64_t> MetricsSeries::n_diff_at(std::uint64_t step) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), step,
                             [](std::uint64_t s, const MetricsSample& m) { return s < m.step; });
  if (it == samples_.begin()) return std::nullopt;
  return std::prev(it)->n_diff;
}

bool detect_stagnation(const MetricsSeries& series, std::uint64_t window) {
  if (series.empty()) throw std::invalid_argument("stagnation check on an empty series");
  const auto& samples = series.samples();
  const std::uint64_t horizon = samples.back().step;
  if (window >= horizon || horizon - window < samples.front().step) {
    throw std::invalid_argument("stagnation window " + std::to_string(window) +
                                " exceeds recorded horizon " + std::to_string(horizon));
  }
  const std::uint64_t start = horizon - window;
  const std::uint64_t reference = *series.n_diff_at(start);
  for (const auto& s : samples) {
    if (s.step > start && s.n_diff != reference) return false;
  }
  return true;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("box_stats needs at least one value");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  BoxStats b;
  b.q1 = quantile_sorted(sorted, 0.25);
  b.median = quantile_sorted(sorted, 0.5);
  b.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = b.q3 - b.q1;
  const double low_fence = b.q1 - 1.5 * iqr;
  const double high_fence = b.q3 + 1.5 * iqr;

  b.whisker_low = b.median;
  b.whisker_high = b.median;
  bool have_inlier = false;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      b.outliers.push_back(v);
      continue;
    }
    if (!have_inlier) {
      b.whisker_low = v;
      have_inlier = true;
    }
    b.whisker_high = v;
  }
  b.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  return b;
}

void write_series_csv(std::ostream& out, const MetricsSeries& series) {
  out << "step,n_total,n_diff,success_rate\n";
  for (const auto& s : series.samples()) {
    out << s.step << ',' << s.n_total << ',' << s.n_diff << ',' << s.success_rate << '\n';
  }
}

}  // namespace mlwng
