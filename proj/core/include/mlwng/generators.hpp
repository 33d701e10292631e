#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlwng/graph.hpp"
#include "mlwng/rng.hpp"

namespace mlwng {

/// Raised when a generator cannot produce a connected graph within its
/// retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multi-local-world growth parameters. Dispatch defaults: operation b 28%,
/// c 11%, d 4%, e 57%. Operations b, c, d touch two edges each; operation e
/// adds a single inter-local-world edge by default.
struct MlwParams {
  std::size_t n = 1000;        ///< final node count
  std::size_t lw_count = 50;   ///< initial local-worlds
  std::size_t m0 = 10;         ///< nodes per initial local-world (clique)
  double p1 = 0.0;
  double p2 = 0.28;
  double p3 = 0.39;
  double p4 = 0.43;
  std::size_t e1 = 2;
  std::size_t e2 = 2;
  std::size_t e3 = 2;
  std::size_t e4 = 1;
  double alpha = 1.0;  ///< offset in the preferential weight k + alpha

  /// lw_count = floor(rho * n / m0).
  static MlwParams from_rho(std::size_t n, double rho, std::size_t m0);

  /// Edges per initial clique, m0 (m0 - 1) / 2.
  std::size_t e0() const { return m0 * (m0 - 1) / 2; }
  /// Fraction of nodes placed in the initial local-worlds.
  double rho() const { return static_cast<double>(lw_count * m0) / static_cast<double>(n); }

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

enum class BaselineKind { kRandomGraph, kSmallWorld, kScaleFree };

std::string to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(const std::string& text);

struct BaselineParams {
  BaselineKind kind = BaselineKind::kRandomGraph;
  std::size_t n = 1000;
  double target_avg_degree = 10.0;
  double sw_rewire_prob = 0.2;

  void validate() const;
};

/// Dispatch tallies for growth operations a..e.
struct DispatchCounts {
  std::array<std::uint64_t, 5> ops{};  // a, b, c, d, e

  std::uint64_t total() const;
};

struct MlwBuild {
  Graph graph;
  DispatchCounts counts;
  /// Number of generation attempts consumed (1 when the first was connected).
  std::size_t attempts = 1;
};

/// Many small cliques joined by single inter edges are rarely connected
/// (about 4% of builds at N=1000, rho=0.8, m0=4), so the bound is generous.
inline constexpr std::size_t kMlwMaxAttempts = 1024;

/// Builds a connected MLW graph with community labels (one label per
/// local-world). A disconnected result is discarded and rebuilt from the
/// next derived seed; GenerationError after `max_attempts`.
MlwBuild gen_mlw_detailed(const MlwParams& params, std::uint64_t seed,
                          std::size_t max_attempts = kMlwMaxAttempts);
Graph gen_mlw(const MlwParams& params, std::uint64_t seed);

/// One growth pass without the connectivity retry. Exposed for tests.
MlwBuild grow_mlw_once(const MlwParams& params, Rng& rng);

/// Initial configuration: lw_count disjoint labelled cliques of m0 nodes.
Graph initial_local_worlds(const MlwParams& params);

/// Preferential weights (k_i + alpha) normalized over lw_nodes \ exclude.
/// Excluded nodes get probability 0. Empty candidate set gives all zeros.
std::vector<double> preferential_probabilities(const Graph& g, std::span<const NodeId> lw_nodes,
                                               double alpha,
                                               std::span<const NodeId> exclude = {});

/// Draws node i from lw_nodes \ exclude with probability
/// (k_i + alpha) / sum_j (k_j + alpha). Empty when no candidate remains.
std::optional<NodeId> preferential_pick(const Graph& g, std::span<const NodeId> lw_nodes,
                                        double alpha, std::span<const NodeId> exclude, Rng& rng);

/// Removal weights for the intra-local-world edges of `node`:
/// (1 / (|LW| - 1)) * (1 - Pi(k_far)), normalized over those edges.
/// Returns (far endpoint, probability) pairs.
std::vector<std::pair<NodeId, double>> deletion_weights(const Graph& g, NodeId node,
                                                        std::span<const NodeId> lw_nodes,
                                                        double alpha);

/// Samples an intra-local-world edge of `node` by deletion_weights,
/// resampling away from edges whose removal would leave an endpoint with
/// degree 0. Empty when every candidate would isolate a node.
std::optional<Edge> deletion_pick(const Graph& g, NodeId node, std::span<const NodeId> lw_nodes,
                                  double alpha, Rng& rng);

/// Connected RG / SW / SF baseline; retries with derived seeds.
Graph gen_baseline(const BaselineParams& params, std::uint64_t seed,
                   std::size_t max_attempts = 64);

/// Single attempts, possibly disconnected.
Graph random_graph_once(std::size_t n, std::size_t edge_count, Rng& rng);
Graph small_world_once(std::size_t n, std::size_t lattice_degree, double rewire_prob, Rng& rng);
Graph scale_free_once(std::size_t n, std::size_t edges_per_node, Rng& rng);

/// Density matching against a measured average degree.
std::size_t rg_edge_count(std::size_t n, double avg_degree);
std::size_t sw_lattice_degree(double avg_degree);
std::size_t sf_edges_per_node(double avg_degree);

}  // namespace mlwng
