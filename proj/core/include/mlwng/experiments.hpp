#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlwng/generators.hpp"
#include "mlwng/graph.hpp"
#include "mlwng/metrics.hpp"
#include "mlwng/naming_game.hpp"

namespace mlwng {

enum class ExperimentKind { kM0Sweep, kRhoSweep, kTopologyCompare, kScaling };
enum class Topology { kMlw, kRandomGraph, kSmallWorld, kScaleFree, kComplete };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);
std::string to_string(Topology topology);
Topology parse_topology(const std::string& text);

/// Declarative sweep description. Empty sweep lists are filled with the
/// standard grids by resolved().
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kM0Sweep;
  std::size_t n = 1000;
  std::size_t runs = 30;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t base_seed = 1;

  /// m0_sweep grid, or the reference m0 values of topology_compare.
  std::vector<std::size_t> m0_values;
  /// rho_sweep grid.
  std::vector<double> rho_values;
  /// scaling grid of population sizes.
  std::vector<std::size_t> n_values;
  /// topology_compare: topologies to run; scaling: the first entry is used.
  std::vector<Topology> topologies;

  /// Fixed rho for m0_sweep, topology_compare and MLW scaling. Defaults to
  /// 0.7 for topology_compare and 0.5 otherwise.
  std::optional<double> rho;
  /// Fixed m0 for rho_sweep and MLW scaling. Defaults to 4.
  std::optional<std::size_t> m0;
  /// Average degree for baseline topologies in a scaling run.
  double target_avg_degree = 10.0;

  /// Growth template; n, m0 and lw_count are set per point.
  MlwParams mlw;
  double sw_rewire_prob = 0.2;

  bool regenerate_network_per_run = true;
  /// Concurrent runs; 0 means hardware concurrency.
  std::size_t workers = 0;
  PairSelection pair_selection = PairSelection::kSpeakerFirst;
  std::uint64_t stagnation_window = 1'000'000;
  double rho_threshold_factor = 2.0;
  double points_per_decade = SampleSchedule::kDefaultPointsPerDecade;

  /// Output switches for write_results.
  bool write_series = true;
  bool write_networks = false;

  /// Copy with empty grids replaced by the defaults for `kind`.
  ExperimentConfig resolved() const;

  /// Throws std::invalid_argument naming the violated constraint, including
  /// sweep points whose generator parameters are invalid.
  void validate() const;
};

/// One network family/parameter combination of a sweep.
struct SweepPoint {
  std::size_t index = 0;
  std::string label;   ///< file-name safe, e.g. "m0-10" or "m0-10-rg"
  double param = 0.0;  ///< swept value (m0, rho, n or reference m0)
  Topology topology = Topology::kMlw;
  std::size_t n = 0;
  std::optional<MlwParams> mlw;
  std::optional<BaselineParams> baseline;
};

struct RunResult {
  std::size_t point = 0;
  std::size_t run = 0;
  std::uint64_t game_seed = 0;
  std::uint64_t network_seed = 0;
  bool converged = false;
  std::optional<std::uint64_t> convergence_time;
  std::uint64_t steps = 0;
  std::uint64_t final_n_diff = 0;
  std::uint64_t final_n_total = 0;
  GraphStats network_stats;
  std::optional<CommunityRatioReport> ratio_report;
  /// Stagnation over the configured window; empty for converged runs or when
  /// the window exceeds the run.
  std::optional<bool> stagnated;
  MetricsSeries series;
};

struct PointSummary {
  SweepPoint point;
  std::size_t runs = 0;
  std::size_t converged = 0;
  std::size_t non_converged = 0;
  /// Convergence-time box statistics over converged runs only.
  std::optional<BoxStats> time_stats;
  /// Median / mean with non-converged runs counted at max_steps (a lower
  /// bound on their true time).
  double censored_median_time = 0.0;
  double censored_mean_time = 0.0;
  double mean_final_n_diff = 0.0;
  std::size_t stagnated = 0;
  std::optional<std::size_t> lw_count;
  std::optional<double> mean_ratio;
  std::optional<double> std_ratio;
  double mean_avg_degree = 0.0;
  std::optional<double> mean_path_length;
  double mean_clustering = 0.0;
};

/// Mean trajectory over the runs of one point on the shared sample
/// schedule. Converged runs hold their final state (n_total = N, n_diff = 1,
/// success rate 1) after convergence.
struct MeanTrajectory {
  std::size_t point = 0;
  std::vector<std::uint64_t> steps;
  std::vector<double> n_total;
  std::vector<double> n_diff;
  std::vector<double> success_rate;
};

struct SweepSummary {
  std::vector<PointSummary> points;
  /// rho_sweep only: last rho of the flat plateau before the rise.
  std::optional<double> rho_threshold;
  /// scaling only: least-squares slope of log(mean time) on log(n).
  std::optional<double> scaling_exponent;
};

struct ExperimentResult {
  ExperimentConfig config;  ///< resolved
  SweepSummary summary;
  std::vector<RunResult> runs;  ///< sorted by (point, run)
  std::vector<MeanTrajectory> trajectories;
  /// Generated networks keyed "<point label>_<run>"; filled only when
  /// config.write_networks is set.
  std::vector<std::pair<std::string, Graph>> networks;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every point of the sweep. Per-run seeds are derived from
/// (base_seed, point, run) so results do not depend on the worker count.
/// Generator failures propagate as GenerationError naming the point.
ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Sweep points for kinds whose points are known up front (all but the
/// baseline half of topology_compare, which depends on measured MLW degree).
std::vector<SweepPoint> plan_points(const ExperimentConfig& config);

/// Baselines density-matched to a measured MLW average degree: RG with
/// round(n <k> / 2) edges, SW with the nearest even lattice degree, SF with
/// round(<k> / 2) edges per new node.
std::vector<BaselineParams> match_baselines(const GraphStats& mlw_stats, std::size_t n,
                                            double sw_rewire_prob = 0.2);

/// Aggregates the runs of one point.
PointSummary summarize_point(const SweepPoint& point, const std::vector<RunResult>& runs,
                             std::uint64_t max_steps);

/// Last rho before the median convergence time first exceeds `factor`
/// times the median of the preceding plateau. Points must be in ascending
/// rho. Empty when no rise is detected.
std::optional<double> estimate_rho_threshold(const std::vector<PointSummary>& points,
                                             double factor);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

MeanTrajectory mean_trajectory(std::size_t point, const std::vector<const RunResult*>& runs,
                               std::size_t n, const SampleSchedule& schedule);

/// Writes summary.csv, runs.csv, trajectories/, series/ and networks/ (when
/// enabled) plus the echoed config.json under `dir`.
void write_results(const std::filesystem::path& dir, const ExperimentResult& result);

void write_summary_csv(std::ostream& out, const SweepSummary& summary);
void write_runs_csv(std::ostream& out, const ExperimentResult& result);
void write_trajectory_csv(std::ostream& out, const MeanTrajectory& trajectory);

/// Shortest round-trip decimal form; used for every CSV number.
std::string format_number(double value);

}  // namespace mlwng
