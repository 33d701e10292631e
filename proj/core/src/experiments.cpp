#include "mlwng/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "mlwng/config.hpp"

namespace mlwng {

namespace {

constexpr std::uint64_t kGameStream = 0;
constexpr std::uint64_t kNetworkStream = 1;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

std::vector<std::size_t> default_m0_grid() {
  std::vector<std::size_t> grid;
  for (std::size_t m0 = 3; m0 <= 19; ++m0) grid.push_back(m0);
  for (std::size_t m0 = 20; m0 <= 100; m0 += 10) grid.push_back(m0);
  return grid;
}

std::vector<double> default_rho_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

MlwParams mlw_point(const MlwParams& tmpl, std::size_t n, double rho, std::size_t m0) {
  MlwParams p = MlwParams::from_rho(n, rho, m0);
  p.p1 = tmpl.p1;
  p.p2 = tmpl.p2;
  p.p3 = tmpl.p3;
  p.p4 = tmpl.p4;
  p.e1 = tmpl.e1;
  p.e2 = tmpl.e2;
  p.e3 = tmpl.e3;
  p.e4 = tmpl.e4;
  p.alpha = tmpl.alpha;
  return p;
}

BaselineKind baseline_kind(Topology t) {
  switch (t) {
    case Topology::kRandomGraph:
      return BaselineKind::kRandomGraph;
    case Topology::kSmallWorld:
      return BaselineKind::kSmallWorld;
    case Topology::kScaleFree:
      return BaselineKind::kScaleFree;
    default:
      throw std::invalid_argument("topology " + to_string(t) + " is not a baseline");
  }
}

bool is_baseline(Topology t) {
  return t == Topology::kRandomGraph || t == Topology::kSmallWorld || t == Topology::kScaleFree;
}

std::string na_or(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

std::string run_suffix(std::size_t run) {
  std::string id = std::to_string(run);
  return id.size() < 3 ? std::string(3 - id.size(), '0') + id : id;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kM0Sweep:
      return "m0_sweep";
    case ExperimentKind::kRhoSweep:
      return "rho_sweep";
    case ExperimentKind::kTopologyCompare:
      return "topology_compare";
    case ExperimentKind::kScaling:
      return "scaling";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
  if (text == "m0_sweep") return ExperimentKind::kM0Sweep;
  if (text == "rho_sweep") return ExperimentKind::kRhoSweep;
  if (text == "topology_compare") return ExperimentKind::kTopologyCompare;
  if (text == "scaling") return ExperimentKind::kScaling;
  throw std::invalid_argument("unknown experiment kind '" + text +
                              "' (expected m0_sweep, rho_sweep, topology_compare or scaling)");
}

std::string to_string(Topology topology) {
  switch (topology) {
    case Topology::kMlw:
      return "mlw";
    case Topology::kRandomGraph:
      return "rg";
    case Topology::kSmallWorld:
      return "sw";
    case Topology::kScaleFree:
      return "sf";
    case Topology::kComplete:
      return "complete";
  }
  return "?";
}

Topology parse_topology(const std::string& text) {
  if (text == "mlw") return Topology::kMlw;
  if (text == "rg") return Topology::kRandomGraph;
  if (text == "sw") return Topology::kSmallWorld;
  if (text == "sf") return Topology::kScaleFree;
  if (text == "complete") return Topology::kComplete;
  throw std::invalid_argument("unknown topology '" + text +
                              "' (expected mlw, rg, sw, sf or complete)");
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig c = *this;
  switch (c.kind) {
    case ExperimentKind::kM0Sweep:
      if (c.m0_values.empty()) c.m0_values = default_m0_grid();
      break;
    case ExperimentKind::kRhoSweep:
      if (c.rho_values.empty()) c.rho_values = default_rho_grid();
      break;
    case ExperimentKind::kTopologyCompare:
      if (c.m0_values.empty()) c.m0_values = {10, 20, 30, 100};
      if (c.topologies.empty()) {
        c.topologies = {Topology::kRandomGraph, Topology::kSmallWorld, Topology::kScaleFree,
                        Topology::kMlw};
      }
      if (!c.rho) c.rho = 0.7;
      break;
    case ExperimentKind::kScaling:
      if (c.n_values.empty()) c.n_values = {100, 200, 400};
      if (c.topologies.empty()) c.topologies = {Topology::kComplete};
      break;
  }
  if (!c.rho) c.rho = 0.5;
  if (!c.m0) c.m0 = 4;
  return c;
}

void ExperimentConfig::validate() const {
  const ExperimentConfig c = resolved();
  require(c.runs >= 1, "runs must be >= 1");
  require(c.max_steps >= 1, "max_steps must be >= 1");
  require(c.n >= 2, "n must be >= 2");
  require(c.stagnation_window >= 1, "stagnation_window must be >= 1");
  require(c.rho_threshold_factor > 1.0, "rho_threshold_factor must be > 1");
  require(c.points_per_decade > 0.0, "points_per_decade must be > 0");
  require(*c.rho > 0.0 && *c.rho < 1.0, "rho must be in (0, 1)");
  require(*c.m0 >= 3, "m0 must be >= 3");
  require(c.sw_rewire_prob >= 0.0 && c.sw_rewire_prob <= 1.0,
          "sw_rewire_prob must be in [0, 1]");
  if (c.kind == ExperimentKind::kTopologyCompare) {
    require(std::find(c.topologies.begin(), c.topologies.end(), Topology::kMlw) !=
                c.topologies.end(),
            "topology_compare needs mlw among the topologies (baselines match its degree)");
    for (Topology t : c.topologies) {
      require(t != Topology::kComplete, "topology_compare does not support complete graphs");
    }
  }
  if (c.kind == ExperimentKind::kScaling) {
    for (std::size_t n : c.n_values) require(n >= 3, "scaling n values must be >= 3");
  }
  // Generator preconditions at every point.
  for (const SweepPoint& p : plan_points(c)) {
    try {
      if (p.mlw) p.mlw->validate();
      if (p.baseline) p.baseline->validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("point " + p.label + ": " + e.what());
    }
  }
}

std::vector<SweepPoint> plan_points(const ExperimentConfig& config) {
  const ExperimentConfig c = config.resolved();
  std::vector<SweepPoint> points;
  auto add_mlw = [&](std::size_t index, std::string label, double param, std::size_t n,
                     double rho, std::size_t m0) {
    SweepPoint p;
    p.index = index;
    p.label = std::move(label);
    p.param = param;
    p.topology = Topology::kMlw;
    p.n = n;
    p.mlw = mlw_point(c.mlw, n, rho, m0);
    points.push_back(std::move(p));
  };

  switch (c.kind) {
    case ExperimentKind::kM0Sweep:
      for (std::size_t i = 0; i < c.m0_values.size(); ++i) {
        const std::size_t m0 = c.m0_values[i];
        add_mlw(i, "m0-" + std::to_string(m0), static_cast<double>(m0), c.n, *c.rho, m0);
      }
      break;
    case ExperimentKind::kRhoSweep:
      for (std::size_t i = 0; i < c.rho_values.size(); ++i) {
        const double rho = c.rho_values[i];
        add_mlw(i, "rho-" + format_number(rho), rho, c.n, rho, *c.m0);
      }
      break;
    case ExperimentKind::kTopologyCompare: {
      const auto mlw_slot = static_cast<std::size_t>(
          std::find(c.topologies.begin(), c.topologies.end(), Topology::kMlw) -
          c.topologies.begin());
      for (std::size_t r = 0; r < c.m0_values.size(); ++r) {
        const std::size_t m0 = c.m0_values[r];
        add_mlw(r * c.topologies.size() + mlw_slot, "m0-" + std::to_string(m0) + "-mlw",
                static_cast<double>(m0), c.n, *c.rho, m0);
      }
      break;
    }
    case ExperimentKind::kScaling: {
      const Topology t = c.topologies.front();
      for (std::size_t i = 0; i < c.n_values.size(); ++i) {
        const std::size_t n = c.n_values[i];
        const std::string label = "n-" + std::to_string(n);
        if (t == Topology::kMlw) {
          add_mlw(i, label, static_cast<double>(n), n, *c.rho, *c.m0);
          continue;
        }
        SweepPoint p;
        p.index = i;
        p.label = label;
        p.param = static_cast<double>(n);
        p.topology = t;
        p.n = n;
        if (is_baseline(t)) {
          p.baseline = BaselineParams{baseline_kind(t), n, c.target_avg_degree, c.sw_rewire_prob};
        }
        points.push_back(std::move(p));
      }
      break;
    }
  }
  return points;
}

std::vector<BaselineParams> match_baselines(const GraphStats& mlw_stats, std::size_t n,
                                            double sw_rewire_prob) {
  const double k = mlw_stats.avg_degree;
  return {
      BaselineParams{BaselineKind::kRandomGraph, n, k, sw_rewire_prob},
      BaselineParams{BaselineKind::kSmallWorld, n, k, sw_rewire_prob},
      BaselineParams{BaselineKind::kScaleFree, n, k, sw_rewire_prob},
  };
}

PointSummary summarize_point(const SweepPoint& point, const std::vector<RunResult>& runs,
                             std::uint64_t max_steps) {
  PointSummary s;
  s.point = point;
  s.runs = runs.size();
  if (point.mlw) s.lw_count = point.mlw->lw_count;

  std::vector<double> times;
  std::vector<double> censored;
  std::vector<double> ratios;
  double n_diff_sum = 0.0, k_sum = 0.0, cc_sum = 0.0, pl_sum = 0.0;
  bool all_pl = true;
  for (const RunResult& r : runs) {
    if (r.converged) {
      ++s.converged;
      times.push_back(static_cast<double>(*r.convergence_time));
      censored.push_back(static_cast<double>(*r.convergence_time));
    } else {
      ++s.non_converged;
      censored.push_back(static_cast<double>(max_steps));
    }
    if (r.stagnated.value_or(false)) ++s.stagnated;
    n_diff_sum += static_cast<double>(r.final_n_diff);
    k_sum += r.network_stats.avg_degree;
    cc_sum += r.network_stats.avg_clustering;
    if (r.network_stats.avg_path_length) {
      pl_sum += *r.network_stats.avg_path_length;
    } else {
      all_pl = false;
    }
    if (r.ratio_report) ratios.push_back(r.ratio_report->mean_ratio);
  }
  if (runs.empty()) return s;
  const double count = static_cast<double>(runs.size());
  if (!times.empty()) s.time_stats = box_stats(times);
  std::sort(censored.begin(), censored.end());
  s.censored_median_time = quantile_sorted(censored, 0.5);
  s.censored_mean_time = std::accumulate(censored.begin(), censored.end(), 0.0) / count;
  s.mean_final_n_diff = n_diff_sum / count;
  s.mean_avg_degree = k_sum / count;
  s.mean_clustering = cc_sum / count;
  if (all_pl) s.mean_path_length = pl_sum / count;
  if (!ratios.empty()) {
    const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / ratios.size();
    double sq = 0.0;
    for (double r : ratios) sq += (r - mean) * (r - mean);
    s.mean_ratio = mean;
    s.std_ratio = ratios.size() > 1 ? std::sqrt(sq / static_cast<double>(ratios.size() - 1)) : 0.0;
  }
  return s;
}

std::optional<double> estimate_rho_threshold(const std::vector<PointSummary>& points,
                                             double factor) {
  std::vector<double> plateau;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double median = points[i].censored_median_time;
    if (!plateau.empty()) {
      std::vector<double> sorted = plateau;
      std::sort(sorted.begin(), sorted.end());
      if (median > factor * quantile_sorted(sorted, 0.5)) return points[i - 1].point.param;
    }
    plateau.push_back(median);
  }
  return std::nullopt;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "slope needs at least two (x, y) pairs");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "log-log slope needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  require(sxx > 0.0, "slope needs at least two distinct x values");
  return sxy / sxx;
}

MeanTrajectory mean_trajectory(std::size_t point, const std::vector<const RunResult*>& runs,
                               std::size_t n, const SampleSchedule& schedule) {
  MeanTrajectory t;
  t.point = point;
  std::uint64_t horizon = 0;
  for (const RunResult* r : runs) horizon = std::max(horizon, r->steps);
  t.steps = schedule.steps_up_to(horizon);
  if (t.steps.empty() || t.steps.back() != horizon) t.steps.push_back(horizon);
  t.n_total.assign(t.steps.size(), 0.0);
  t.n_diff.assign(t.steps.size(), 0.0);
  t.success_rate.assign(t.steps.size(), 0.0);
  if (runs.empty()) return t;

  for (const RunResult* r : runs) {
    const auto& samples = r->series.samples();
    std::size_t cursor = 0;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const std::uint64_t step = t.steps[i];
      while (cursor + 1 < samples.size() && samples[cursor + 1].step <= step) ++cursor;
      if (r->converged && step > r->steps) {
        t.n_total[i] += static_cast<double>(n);
        t.n_diff[i] += 1.0;
        t.success_rate[i] += 1.0;
      } else if (!samples.empty() && samples[cursor].step <= step) {
        t.n_total[i] += static_cast<double>(samples[cursor].n_total);
        t.n_diff[i] += static_cast<double>(samples[cursor].n_diff);
        t.success_rate[i] += samples[cursor].success_rate;
      }
    }
  }
  const double count = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    t.n_total[i] /= count;
    t.n_diff[i] /= count;
    t.success_rate[i] /= count;
  }
  return t;
}

namespace {

struct PointData {
  SweepPoint point;
  std::vector<RunResult> runs;
  std::vector<std::optional<Graph>> networks;  // kept only when writing networks
};

Graph build_network(const SweepPoint& point, std::uint64_t seed) {
  try {
    switch (point.topology) {
      case Topology::kMlw:
        return gen_mlw(*point.mlw, seed);
      case Topology::kComplete:
        return Graph::complete(point.n);
      default:
        return gen_baseline(*point.baseline, seed);
    }
  } catch (const GenerationError& e) {
    throw GenerationError("point " + point.label + ": " + e.what());
  }
}

class Executor {
 public:
  Executor(const ExperimentConfig& config, const ProgressFn& progress, std::size_t total_tasks)
      : config_(config), progress_(progress), total_(total_tasks) {
    workers_ = config.workers != 0 ? config.workers
                                   : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  void execute(std::vector<PointData>& points) {
    // Shared networks when one graph serves every run of a point.
    std::vector<std::optional<Graph>> shared(points.size());
    if (!config_.regenerate_network_per_run) {
      for (std::size_t i = 0; i < points.size(); ++i) {
        shared[i] = build_network(points[i].point, network_seed(points[i].point, 0));
      }
    }
    struct Task {
      std::size_t point;
      std::size_t run;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < points.size(); ++p) {
      points[p].runs.assign(config_.runs, RunResult{});
      if (config_.write_networks) points[p].networks.assign(config_.runs, std::nullopt);
      for (std::size_t r = 0; r < config_.runs; ++r) tasks.push_back({p, r});
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        {
          std::lock_guard lock(mutex);
          if (failure) return;
        }
        try {
          PointData& pd = points[tasks[i].point];
          const std::size_t run = tasks[i].run;
          const Graph* shared_graph = shared[tasks[i].point] ? &*shared[tasks[i].point] : nullptr;
          std::optional<Graph> own;
          if (!shared_graph) own = build_network(pd.point, network_seed(pd.point, run));
          const Graph& graph = shared_graph ? *shared_graph : *own;
          pd.runs[run] = play(pd.point, run, graph);
          if (config_.write_networks) pd.networks[run] = graph;
          std::lock_guard lock(mutex);
          ++done_;
          if (progress_) progress_(done_, total_);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    const std::size_t n_threads = std::min(workers_, tasks.size());
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
  }

 private:
  std::uint64_t network_seed(const SweepPoint& point, std::size_t run) const {
    const std::size_t slot = config_.regenerate_network_per_run ? run : 0;
    return derive_seed(config_.base_seed, point.index, slot, kNetworkStream);
  }

  RunResult play(const SweepPoint& point, std::size_t run, const Graph& graph) const {
    RunResult r;
    r.point = point.index;
    r.run = run;
    r.network_seed = network_seed(point, run);
    r.game_seed = derive_seed(config_.base_seed, point.index, run, kGameStream);
    r.network_stats = compute_stats(graph);
    if (graph.has_communities()) r.ratio_report = community_ratio(graph);

    RunOptions options;
    options.max_steps = config_.max_steps;
    options.selection = config_.pair_selection;
    options.points_per_decade = config_.points_per_decade;
    GameRun game = run_game(graph, r.game_seed, options);
    r.converged = game.converged;
    r.convergence_time = game.convergence_time;
    r.steps = game.steps;
    r.final_n_diff = game.final_n_diff;
    r.final_n_total = game.final_n_total;
    r.series = std::move(game.series);
    if (!r.converged) {
      try {
        r.stagnated = detect_stagnation(r.series, config_.stagnation_window);
      } catch (const std::invalid_argument&) {
        r.stagnated.reset();
      }
    }
    return r;
  }

  const ExperimentConfig& config_;
  const ProgressFn& progress_;
  std::size_t total_;
  std::size_t done_ = 0;
  std::size_t workers_ = 1;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  ExperimentResult result;
  result.config = config.resolved();
  const ExperimentConfig& cfg = result.config;
  cfg.validate();

  std::vector<PointData> first;
  for (SweepPoint& p : plan_points(cfg)) first.push_back(PointData{std::move(p), {}, {}});

  std::size_t total_points = first.size();
  if (cfg.kind == ExperimentKind::kTopologyCompare) {
    total_points = cfg.m0_values.size() * cfg.topologies.size();
  }
  Executor executor(cfg, progress, total_points * cfg.runs);
  executor.execute(first);

  std::vector<PointData> all = std::move(first);
  if (cfg.kind == ExperimentKind::kTopologyCompare) {
    std::vector<PointData> second;
    for (std::size_t r = 0; r < cfg.m0_values.size(); ++r) {
      const PointData& mlw = all[r];
      GraphStats mean_stats;
      for (const RunResult& run : mlw.runs) mean_stats.avg_degree += run.network_stats.avg_degree;
      mean_stats.avg_degree /= static_cast<double>(mlw.runs.size());
      const auto matched = match_baselines(mean_stats, cfg.n, cfg.sw_rewire_prob);
      for (std::size_t t = 0; t < cfg.topologies.size(); ++t) {
        const Topology topo = cfg.topologies[t];
        if (topo == Topology::kMlw) continue;
        SweepPoint p;
        p.index = r * cfg.topologies.size() + t;
        p.label = "m0-" + std::to_string(cfg.m0_values[r]) + "-" + to_string(topo);
        p.param = static_cast<double>(cfg.m0_values[r]);
        p.topology = topo;
        p.n = cfg.n;
        for (const auto& b : matched) {
          if (b.kind == baseline_kind(topo)) p.baseline = b;
        }
        second.push_back(PointData{std::move(p), {}, {}});
      }
    }
    executor.execute(second);
    for (auto& pd : second) all.push_back(std::move(pd));
  }
  std::sort(all.begin(), all.end(),
            [](const PointData& a, const PointData& b) { return a.point.index < b.point.index; });

  const SampleSchedule schedule(cfg.points_per_decade);
  for (PointData& pd : all) {
    result.summary.points.push_back(summarize_point(pd.point, pd.runs, cfg.max_steps));
    std::vector<const RunResult*> ptrs;
    for (const RunResult& r : pd.runs) ptrs.push_back(&r);
    result.trajectories.push_back(mean_trajectory(pd.point.index, ptrs, pd.point.n, schedule));
    for (std::size_t r = 0; r < pd.networks.size(); ++r) {
      if (pd.networks[r]) {
        result.networks.emplace_back(pd.point.label + "_" + run_suffix(r),
                                     std::move(*pd.networks[r]));
      }
    }
    for (RunResult& r : pd.runs) result.runs.push_back(std::move(r));
  }

  if (cfg.kind == ExperimentKind::kRhoSweep) {
    std::vector<PointSummary> by_rho = result.summary.points;
    std::sort(by_rho.begin(), by_rho.end(), [](const PointSummary& a, const PointSummary& b) {
      return a.point.param < b.point.param;
    });
    result.summary.rho_threshold = estimate_rho_threshold(by_rho, cfg.rho_threshold_factor);
  }
  if (cfg.kind == ExperimentKind::kScaling) {
    std::vector<double> xs, ys;
    for (const PointSummary& s : result.summary.points) {
      if (s.time_stats) {
        xs.push_back(s.point.param);
        ys.push_back(s.time_stats->mean);
      }
    }
    if (xs.size() >= 2) result.summary.scaling_exponent = log_log_slope(xs, ys);
  }
  return result;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  char buf[64];
  // Integral values such as step counts stay in plain notation.
  constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53
  const auto res = std::trunc(value) == value && std::abs(value) < kExactIntegerLimit
                       ? std::to_chars(buf, buf + sizeof(buf), static_cast<std::int64_t>(value))
                       : std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_summary_csv(std::ostream& out, const SweepSummary& summary) {
  out << "param,median,q1,q3,wlow,whigh,mean,n_outliers,label,topology,n,runs,converged,"
         "non_converged,nonconv_fraction,censored_median,censored_mean,mean_final_n_diff,"
         "lw_count,stagnated,mean_ratio,std_ratio,mean_k,mean_pl,mean_cc\n";
  for (const PointSummary& s : summary.points) {
    out << format_number(s.point.param) << ',';
    if (s.time_stats) {
      const BoxStats& b = *s.time_stats;
      out << format_number(b.median) << ',' << format_number(b.q1) << ',' << format_number(b.q3)
          << ',' << format_number(b.whisker_low) << ',' << format_number(b.whisker_high) << ','
          << format_number(b.mean) << ',' << b.outliers.size() << ',';
    } else {
      out << "NA,NA,NA,NA,NA,NA,0,";
    }
    out << s.point.label << ',' << to_string(s.point.topology) << ',' << s.point.n << ','
        << s.runs << ',' << s.converged << ',' << s.non_converged << ','
        << format_number(s.runs ? static_cast<double>(s.non_converged) / s.runs : 0.0) << ','
        << format_number(s.censored_median_time) << ',' << format_number(s.censored_mean_time)
        << ',' << format_number(s.mean_final_n_diff) << ','
        << (s.lw_count ? std::to_string(*s.lw_count) : "NA") << ',' << s.stagnated << ','
        << na_or(s.mean_ratio) << ',' << na_or(s.std_ratio) << ','
        << format_number(s.mean_avg_degree) << ',' << na_or(s.mean_path_length) << ','
        << format_number(s.mean_clustering) << '\n';
  }
}

void write_runs_csv(std::ostream& out, const ExperimentResult& result) {
  std::map<std::size_t, std::string> labels;
  for (const auto& s : result.summary.points) labels[s.point.index] = s.point.label;
  out << "point,label,run,game_seed,network_seed,converged,convergence_time,steps,final_n_diff,"
         "final_n_total,stagnated,avg_degree,avg_path_length,avg_clustering,mean_ratio\n";
  for (const RunResult& r : result.runs) {
    out << r.point << ',' << labels[r.point] << ',' << r.run << ',' << r.game_seed << ','
        << r.network_seed << ',' << (r.converged ? 1 : 0) << ','
        << (r.convergence_time ? std::to_string(*r.convergence_time) : "NA") << ',' << r.steps
        << ',' << r.final_n_diff << ',' << r.final_n_total << ','
        << (r.stagnated ? (*r.stagnated ? "1" : "0") : "NA") << ','
        << format_number(r.network_stats.avg_degree) << ','
        << na_or(r.network_stats.avg_path_length) << ','
        << format_number(r.network_stats.avg_clustering) << ','
        << (r.ratio_report ? format_number(r.ratio_report->mean_ratio) : "NA") << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const MeanTrajectory& t) {
  out << "step,mean_n_total,mean_n_diff,mean_success_rate\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    out << t.steps[i] << ',' << format_number(t.n_total[i]) << ',' << format_number(t.n_diff[i])
        << ',' << format_number(t.success_rate[i]) << '\n';
  }
}

void write_results(const std::filesystem::path& dir, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [](const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
  };

  open(dir / "config.json") << config_to_json(result.config) << '\n';
  {
    auto out = open(dir / "summary.csv");
    write_summary_csv(out, result.summary);
  }
  {
    auto out = open(dir / "runs.csv");
    write_runs_csv(out, result);
  }
  {
    auto out = open(dir / "estimates.csv");
    out << "key,value\n";
    out << "time_stats_scope,converged_runs_only\n";
    out << "rho_threshold," << na_or(result.summary.rho_threshold) << '\n';
    out << "scaling_exponent," << na_or(result.summary.scaling_exponent) << '\n';
  }

  std::map<std::size_t, std::string> labels;
  for (const auto& s : result.summary.points) labels[s.point.index] = s.point.label;
  fs::create_directories(dir / "trajectories");
  for (const MeanTrajectory& t : result.trajectories) {
    auto out = open(dir / "trajectories" / (labels[t.point] + ".csv"));
    write_trajectory_csv(out, t);
  }
  if (result.config.write_series) {
    fs::create_directories(dir / "series");
    for (const RunResult& r : result.runs) {
      auto out = open(dir / "series" / (labels[r.point] + "_" + run_suffix(r.run) + ".csv"));
      write_series_csv(out, r.series);
    }
  }
  if (result.config.write_networks) {
    fs::create_directories(dir / "networks");
    for (const auto& [key, graph] : result.networks) {
      auto out = open(dir / "networks" / (key + ".edges"));
      write_edge_list(out, graph);
    }
  }
}

}  // namespace mlwng
