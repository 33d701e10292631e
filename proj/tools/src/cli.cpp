#include "mlwng/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "mlwng/config.hpp"
#include "mlwng/experiments.hpp"
#include "mlwng/generators.hpp"
#include "mlwng/graph.hpp"
#include "mlwng/naming_game.hpp"

namespace mlwng::cli {

namespace {

// Bad input from the user: exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkOptions {
  std::string model = "mlw";
  std::size_t n = 1000;
  double rho = 0.5;
  std::size_t m0 = 10;
  double k = 10.0;
  double rewire = 0.2;
  std::size_t e4 = MlwParams{}.e4;
  double alpha = MlwParams{}.alpha;
  std::uint64_t seed = 1;
};

void add_network_options(CLI::App* cmd, NetworkOptions& o) {
  cmd->add_option("--model", o.model, "Network model")
      ->check(CLI::IsMember({"mlw", "rg", "sw", "sf", "complete"}))
      ->capture_default_str();
  cmd->add_option("--n", o.n, "Number of nodes")->capture_default_str();
  cmd->add_option("--rho", o.rho, "mlw: fraction of nodes in initial local-worlds")
      ->capture_default_str();
  cmd->add_option("--m0", o.m0, "mlw: nodes per initial local-world")->capture_default_str();
  cmd->add_option("--k", o.k, "rg/sw/sf: target average degree")->capture_default_str();
  cmd->add_option("--rewire", o.rewire, "sw: rewiring probability")->capture_default_str();
  cmd->add_option("--e4", o.e4, "mlw: edges added per inter-local-world operation")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "mlw: preferential weight offset")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Network seed")->capture_default_str();
}

Graph build_network(const NetworkOptions& o) {
  try {
    if (o.model == "complete") {
      if (o.n < 2) throw std::invalid_argument("n must be >= 2");
      return Graph::complete(o.n);
    }
    if (o.model == "mlw") {
      MlwParams p = MlwParams::from_rho(o.n, o.rho, o.m0);
      p.e4 = o.e4;
      p.alpha = o.alpha;
      p.validate();
      return gen_mlw(p, o.seed);
    }
    BaselineParams p{parse_baseline_kind(o.model), o.n, o.k, o.rewire};
    p.validate();
    return gen_baseline(p, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return read_edge_list(in);
  } catch (const std::runtime_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string na_or(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

void print_stats(std::ostream& out, const Graph& g) {
  if (g.node_count() < 2) throw UsageError("graph needs at least 2 nodes");
  const GraphStats s = compute_stats(g);
  out << "nodes " << g.node_count() << '\n'
      << "edges " << g.edge_count() << '\n'
      << "avg_degree " << format_number(s.avg_degree) << '\n'
      << "avg_path_length " << na_or(s.avg_path_length) << '\n'
      << "avg_clustering " << format_number(s.avg_clustering) << '\n'
      << "connected " << (s.connected ? "yes" : "no") << '\n';
  if (g.has_communities()) {
    const std::set<CommunityId> labels(g.communities().begin(), g.communities().end());
    const CommunityRatioReport r = community_ratio(g);
    out << "communities " << labels.size() << '\n'
        << "mean_ratio " << format_number(r.mean_ratio) << '\n'
        << "std_ratio " << format_number(r.std) << '\n';
  }
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
}

int cmd_generate(const NetworkOptions& o, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  const Graph g = build_network(o);
  if (out_path.empty()) {
    // Edge list is the machine output; statistics go to the diagnostic stream.
    write_edge_list(out, g);
    print_stats(err, g);
  } else {
    write_graph_file(out_path, g);
    out << "wrote " << out_path << '\n';
    print_stats(out, g);
  }
  return kOk;
}

struct RunCommand {
  NetworkOptions network;
  std::string graph_path;
  std::optional<std::uint64_t> game_seed;
  std::uint64_t max_steps = 10'000'000;
  std::string selection = "speaker_first";
  std::string trajectory_path;
};

int cmd_run(const RunCommand& c, std::ostream& out) {
  if (c.max_steps == 0) throw UsageError("max-steps must be >= 1");
  const Graph g = c.graph_path.empty() ? build_network(c.network) : load_graph(c.graph_path);
  if (g.node_count() < 2) throw UsageError("graph needs at least 2 nodes");
  if (!is_connected(g)) throw UsageError("graph is disconnected; every agent needs a partner");

  RunOptions options;
  options.max_steps = c.max_steps;
  options.selection = parse_pair_selection(c.selection);
  const GameRun run = run_game(g, c.game_seed.value_or(c.network.seed), options);
  if (run.converged) {
    out << "status converged\n"
        << "convergence_time " << *run.convergence_time << '\n';
  } else {
    out << "status NON-CONVERGED\n";
  }
  out << "steps " << run.steps << '\n'
      << "final_n_diff " << run.final_n_diff << '\n'
      << "final_n_total " << run.final_n_total << '\n';
  if (!c.trajectory_path.empty()) {
    std::ofstream csv(c.trajectory_path);
    if (!csv) throw std::runtime_error("cannot write " + c.trajectory_path);
    write_series_csv(csv, run.series);
  }
  return kOk;
}

struct SweepCommand {
  std::string config_path;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::string out_dir = "results";
  bool no_series = false;
  bool networks = false;
};

int cmd_sweep(const SweepCommand& c, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config(c.config_path);
  if (c.runs) config.runs = *c.runs;
  if (c.max_steps) config.max_steps = *c.max_steps;
  if (c.seed) config.base_seed = *c.seed;
  if (c.workers) config.workers = *c.workers;
  if (c.no_series) config.write_series = false;
  if (c.networks) config.write_networks = true;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(c.config_path + ": " + e.what());
  }

  const ExperimentResult result =
      run_experiment(config, [&err](std::size_t done, std::size_t total) {
        err << "\rruns " << done << '/' << total << std::flush;
        if (done == total) err << '\n';
      });
  write_results(c.out_dir, result);

  out << "label,runs,converged,censored_median\n";
  for (const PointSummary& s : result.summary.points) {
    out << s.point.label << ',' << s.runs << ',' << s.converged << ','
        << format_number(s.censored_median_time) << '\n';
  }
  if (result.summary.rho_threshold) {
    out << "rho_threshold " << format_number(*result.summary.rho_threshold) << '\n';
  }
  if (result.summary.scaling_exponent) {
    out << "scaling_exponent " << format_number(*result.summary.scaling_exponent) << '\n';
  }
  out << "wrote " << c.out_dir << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Naming game on multi-local-world networks", "mlwng"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mlwng 0.1.0");

  NetworkOptions gen_options;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "Generate a network and print its statistics");
  add_network_options(generate, gen_options);
  generate->add_option("--out", gen_out, "Edge-list output file (stdout when omitted)");

  RunCommand run_cmd;
  CLI::App* run = app.add_subcommand("run", "Play one naming game until consensus or max-steps");
  add_network_options(run, run_cmd.network);
  run->add_option("--graph", run_cmd.graph_path, "Edge-list file (overrides --model)");
  run->add_option("--game-seed", run_cmd.game_seed, "Game seed (defaults to --seed)");
  run->add_option("--max-steps", run_cmd.max_steps, "Interaction cap")->capture_default_str();
  run->add_option("--selection", run_cmd.selection, "Pair selection rule")
      ->check(CLI::IsMember({"speaker_first", "edge_uniform"}))
      ->capture_default_str();
  run->add_option("--trajectory", run_cmd.trajectory_path, "Trajectory CSV output file");

  SweepCommand sweep_cmd;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a configured sweep and write result CSVs");
  sweep->add_option("config", sweep_cmd.config_path, "JSON experiment config")->required();
  sweep->add_option("--runs", sweep_cmd.runs, "Override runs per point");
  sweep->add_option("--max-steps", sweep_cmd.max_steps, "Override the interaction cap");
  sweep->add_option("--seed", sweep_cmd.seed, "Override base_seed");
  sweep->add_option("--workers", sweep_cmd.workers, "Concurrent runs (0 = all cores)");
  sweep->add_option("--out", sweep_cmd.out_dir, "Results directory")->capture_default_str();
  sweep->add_flag("--no-series", sweep_cmd.no_series, "Skip per-run trajectory files");
  sweep->add_flag("--networks", sweep_cmd.networks, "Write every generated network");

  std::string stats_path;
  CLI::App* stats = app.add_subcommand("stats", "Print statistics of an edge-list file");
  stats->add_option("edge-list", stats_path, "Edge-list file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen_options, gen_out, out, err);
    if (run->parsed()) return cmd_run(run_cmd, out);
    if (sweep->parsed()) return cmd_sweep(sweep_cmd, out, err);
    print_stats(out, load_graph(stats_path));
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace mlwng::cli
