#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace mlwng {

struct MetricsSample {
  std::uint64_t step = 0;
  std::uint64_t n_total = 0;
  std::uint64_t n_diff = 0;
  /// Successes / interactions since the previous sample; 0 for an empty bin.
  double success_rate = 0.0;

  friend bool operator==(const MetricsSample&, const MetricsSample&) = default;
};

/// Counters handed to MetricsSeries::record at a sample point.
struct MetricsObservation {
  std::uint64_t step = 0;
  std::uint64_t n_total = 0;
  std::uint64_t n_diff = 0;
  std::uint64_t bin_successes = 0;
  std::uint64_t bin_interactions = 0;
};

/// Geometric sampling schedule: step 1, then ceil(ratio^i) for i = 1, 2, ...
/// with duplicates collapsed. Default ratio 10^(1/50), 50 points per decade.
class SampleSchedule {
 public:
  static constexpr double kDefaultPointsPerDecade = 50.0;

  explicit SampleSchedule(double points_per_decade = kDefaultPointsPerDecade);

  /// First scheduled step strictly greater than `step`.
  std::uint64_t next_after(std::uint64_t step) const;

  /// All scheduled steps <= horizon.
  std::vector<std::uint64_t> steps_up_to(std::uint64_t horizon) const;

 private:
  double ratio_;
};

/// Log-sampled trajectory of one game plus its terminal sample.
class MetricsSeries {
 public:
  /// Appends a sample. Throws std::invalid_argument if `obs.step` does not
  /// exceed the previous sample's step.
  void record(const MetricsObservation& obs);

  /// Records the terminal sample. If it coincides with the last scheduled
  /// sample it is not duplicated.
  void finish(const MetricsObservation& obs);

  const std::vector<MetricsSample>& samples() const { return samples_; }
  const std::optional<MetricsSample>& final() const { return final_; }
  bool empty() const { return samples_.empty(); }

  /// n_diff at `step`, reading the trajectory as a step function (value of
  /// the last sample at or before `step`). Empty before the first sample.
  std::optional<std::uint64_t> n_diff_at(std::uint64_t step) const;

  friend bool operator==(const MetricsSeries&, const MetricsSeries&) = default;

 private:
  std::vector<MetricsSample> samples_;
  std::optional<MetricsSample> final_;
};

/// True iff n_diff stayed constant over the final `window` steps:
/// n_diff(T - window) == n_diff(T) and every sample in between agrees.
/// Throws std::invalid_argument if the series is empty or the window
/// reaches before the first recorded sample.
bool detect_stagnation(const MetricsSeries& series, std::uint64_t window);

struct BoxStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
  double mean = 0.0;
};

/// Box-plot summary. Quartiles by linear interpolation between order
/// statistics, outliers beyond 1.5 IQR, whiskers at the furthest inliers.
/// Throws std::invalid_argument on an empty input.
BoxStats box_stats(std::span<const double> values);

/// Quantile q in [0, 1] of sorted data, linear interpolation at (n - 1) q.
double quantile_sorted(std::span<const double> sorted, double q);

/// Header and rows for per-run trajectory CSVs.
void write_series_csv(std::ostream& out, const MetricsSeries& series);

}  // namespace mlwng
