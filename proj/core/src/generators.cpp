#include "mlwng/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mlwng {

namespace {

constexpr std::uint64_t kRetryStream = 0x5eed;
constexpr std::size_t kInterEdgeAttempts = 100;

std::uint64_t attempt_seed(std::uint64_t seed, std::size_t attempt) {
  return attempt == 0 ? seed : derive_seed(seed, attempt, 0, kRetryStream);
}

bool contains(std::span<const NodeId> set, NodeId v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Index into weights drawn proportionally; weights must have a positive sum.
std::size_t weighted_index(std::span<const double> weights, double total, Rng& rng) {
  const double target = rng.unit() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;  // rounding at the top end
}

}  // namespace

MlwParams MlwParams::from_rho(std::size_t n, double rho, std::size_t m0) {
  require(rho > 0.0 && rho < 1.0, "rho must be in (0, 1)");
  require(m0 >= 3, "m0 must be >= 3");
  MlwParams p;
  p.n = n;
  p.m0 = m0;
  // Guard against rho * n landing a hair below an exact multiple.
  p.lw_count = static_cast<std::size_t>(std::floor(rho * static_cast<double>(n) / m0 + 1e-9));
  return p;
}

void MlwParams::validate() const {
  require(m0 >= 3, "m0 must be >= 3");
  require(lw_count >= 3, "N_LW must be >= 3 (got " + std::to_string(lw_count) + ")");
  require(n > lw_count * m0, "N must exceed N_LW * m0");
  require(0.0 <= p1 && p1 <= p2 && p2 <= p3 && p3 <= p4 && p4 <= 1.0,
          "probabilities must satisfy 0 <= p1 <= p2 <= p3 <= p4 <= 1");
  require(p2 > p1, "p2 must exceed p1 so that nodes can be added");
  require(e1 >= 1 && e2 >= 1 && e3 >= 1 && e4 >= 1, "e1..e4 must be positive");
  require(alpha > 0.0, "alpha must be > 0");
}

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRandomGraph:
      return "rg";
    case BaselineKind::kSmallWorld:
      return "sw";
    case BaselineKind::kScaleFree:
      return "sf";
  }
  return "?";
}

BaselineKind parse_baseline_kind(const std::string& text) {
  if (text == "rg") return BaselineKind::kRandomGraph;
  if (text == "sw") return BaselineKind::kSmallWorld;
  if (text == "sf") return BaselineKind::kScaleFree;
  throw std::invalid_argument("unknown baseline kind '" + text + "' (expected rg, sw or sf)");
}

void BaselineParams::validate() const {
  require(n >= 3, "baseline n must be >= 3");
  require(target_avg_degree > 0.0, "target average degree must be > 0");
  require(target_avg_degree < static_cast<double>(n) - 1.0,
          "target average degree must be < n - 1");
  require(sw_rewire_prob >= 0.0 && sw_rewire_prob <= 1.0, "rewire probability must be in [0, 1]");
  switch (kind) {
    case BaselineKind::kRandomGraph:
      require(rg_edge_count(n, target_avg_degree) >= n - 1,
              "random graph too sparse to be connected");
      break;
    case BaselineKind::kSmallWorld: {
      const auto k = sw_lattice_degree(target_avg_degree);
      require(k >= 2 && k < n, "small-world lattice degree must be in [2, n)");
      break;
    }
    case BaselineKind::kScaleFree: {
      const auto m = sf_edges_per_node(target_avg_degree);
      require(m >= 1 && m + 1 < n, "scale-free edges per node must be in [1, n - 1)");
      break;
    }
  }
}

std::uint64_t DispatchCounts::total() const {
  return std::accumulate(ops.begin(), ops.end(), std::uint64_t{0});
}

std::vector<double> preferential_probabilities(const Graph& g, std::span<const NodeId> lw_nodes,
                                               double alpha, std::span<const NodeId> exclude) {
  std::vector<double> weights(lw_nodes.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < lw_nodes.size(); ++i) {
    if (contains(exclude, lw_nodes[i])) continue;
    weights[i] = static_cast<double>(g.degree(lw_nodes[i])) + alpha;
    total += weights[i];
  }
  if (total > 0.0) {
    for (double& w : weights) w /= total;
  }
  return weights;
}

std::optional<NodeId> preferential_pick(const Graph& g, std::span<const NodeId> lw_nodes,
                                        double alpha, std::span<const NodeId> exclude, Rng& rng) {
  std::vector<double> weights(lw_nodes.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < lw_nodes.size(); ++i) {
    if (contains(exclude, lw_nodes[i])) continue;
    weights[i] = static_cast<double>(g.degree(lw_nodes[i])) + alpha;
    total += weights[i];
  }
  if (total <= 0.0) return std::nullopt;
  return lw_nodes[weighted_index(weights, total, rng)];
}

std::vector<std::pair<NodeId, double>> deletion_weights(const Graph& g, NodeId node,
                                                        std::span<const NodeId> lw_nodes,
                                                        double alpha) {
  double pref_total = 0.0;
  for (NodeId v : lw_nodes) pref_total += static_cast<double>(g.degree(v)) + alpha;
  const double lw_scale = lw_nodes.size() > 1 ? 1.0 / static_cast<double>(lw_nodes.size() - 1) : 1.0;

  const bool labelled = g.has_communities();
  std::vector<std::pair<NodeId, double>> out;
  double total = 0.0;
  for (NodeId far : g.neighbors(node)) {
    const bool intra = labelled ? g.community_of(far) == g.community_of(node)
                                : contains(lw_nodes, far);
    if (!intra) continue;
    const double pi = (static_cast<double>(g.degree(far)) + alpha) / pref_total;
    const double w = lw_scale * (1.0 - pi);
    out.emplace_back(far, w);
    total += w;
  }
  if (total > 0.0) {
    for (auto& entry : out) entry.second /= total;
  }
  // Adjacency order depends on insertion history; sort for a stable law.
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Edge> deletion_pick(const Graph& g, NodeId node, std::span<const NodeId> lw_nodes,
                                  double alpha, Rng& rng) {
  auto candidates = deletion_weights(g, node, lw_nodes, alpha);
  std::vector<double> weights;
  while (!candidates.empty()) {
    weights.clear();
    double total = 0.0;
    for (const auto& [far, w] : candidates) {
      weights.push_back(w);
      total += w;
    }
    std::size_t idx = 0;
    if (total > 0.0) {
      idx = weighted_index(weights, total, rng);
    } else {
      idx = rng.below(candidates.size());
    }
    const NodeId far = candidates[idx].first;
    if (g.degree(node) > 1 && g.degree(far) > 1) return Edge::make(node, far);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return std::nullopt;
}

Graph initial_local_worlds(const MlwParams& params) {
  Graph g(params.lw_count * params.m0);
  std::vector<CommunityId> labels(g.node_count());
  for (std::size_t lw = 0; lw < params.lw_count; ++lw) {
    const auto base = static_cast<NodeId>(lw * params.m0);
    for (NodeId i = 0; i < params.m0; ++i) {
      labels[base + i] = static_cast<CommunityId>(lw);
      for (NodeId j = i + 1; j < params.m0; ++j) g.add_edge(base + i, base + j);
    }
  }
  g.set_communities(std::move(labels));
  return g;
}

namespace {

class MlwGrowth {
 public:
  MlwGrowth(const MlwParams& params, Rng& rng)
      : params_(params), rng_(rng), graph_(initial_local_worlds(params)) {
    members_.resize(params.lw_count);
    for (NodeId u = 0; u < graph_.node_count(); ++u) {
      members_[graph_.community_of(u)].push_back(u);
    }
  }

  MlwBuild run() {
    while (graph_.node_count() < params_.n) {
      const double r = rng_.open_unit();
      if (r < params_.p1) {
        ++counts_.ops[0];
        add_local_world();
      } else if (r < params_.p2) {
        ++counts_.ops[1];
        add_node();
      } else if (r < params_.p3) {
        ++counts_.ops[2];
        add_intra_edges();
      } else if (r < params_.p4) {
        ++counts_.ops[3];
        delete_intra_edges();
      } else {
        ++counts_.ops[4];
        add_inter_edges();
      }
    }
    return MlwBuild{std::move(graph_), counts_, 1};
  }

 private:
  std::size_t random_lw() { return rng_.below(members_.size()); }

  // Operation a: a fresh clique, only if it fits within n.
  void add_local_world() {
    if (graph_.node_count() + params_.m0 > params_.n) return;
    const auto id = static_cast<CommunityId>(members_.size());
    auto& lw = members_.emplace_back();
    for (std::size_t i = 0; i < params_.m0; ++i) lw.push_back(graph_.add_node(id));
    for (std::size_t i = 0; i < lw.size(); ++i) {
      for (std::size_t j = i + 1; j < lw.size(); ++j) graph_.add_edge(lw[i], lw[j]);
    }
  }

  // Operation b: new node wired to e1 distinct preferential targets.
  void add_node() {
    const std::size_t lw = random_lw();
    std::vector<NodeId> targets;
    for (std::size_t i = 0; i < params_.e1; ++i) {
      auto pick = preferential_pick(graph_, members_[lw], params_.alpha, targets, rng_);
      if (!pick) break;
      targets.push_back(*pick);
    }
    const NodeId fresh = graph_.add_node(static_cast<CommunityId>(lw));
    for (NodeId t : targets) graph_.add_edge(fresh, t);
    members_[lw].push_back(fresh);
  }

  // Operation c: uniform endpoint plus preferential endpoint not yet
  // adjacent to it; skipped when the uniform endpoint is saturated.
  void add_intra_edges() {
    const auto& lw = members_[random_lw()];
    std::vector<NodeId> exclude;
    for (std::size_t i = 0; i < params_.e2; ++i) {
      const NodeId u = lw[rng_.below(lw.size())];
      exclude.assign(graph_.neighbors(u).begin(), graph_.neighbors(u).end());
      exclude.push_back(u);
      if (auto v = preferential_pick(graph_, lw, params_.alpha, exclude, rng_)) {
        graph_.add_edge(u, *v);
      }
    }
  }

  // Operation d: e3 removals, each from a freshly drawn node.
  void delete_intra_edges() {
    const auto& lw = members_[random_lw()];
    for (std::size_t i = 0; i < params_.e3; ++i) {
      const NodeId node = lw[rng_.below(lw.size())];
      if (auto edge = deletion_pick(graph_, node, lw, params_.alpha, rng_)) {
        graph_.remove_edge(edge->u, edge->v);
      }
    }
  }

  // Operation e: e4 edges between two distinct local-worlds.
  void add_inter_edges() {
    if (members_.size() < 2) return;
    for (std::size_t i = 0; i < params_.e4; ++i) {
      const std::size_t a = random_lw();
      std::size_t b = rng_.below(members_.size() - 1);
      if (b >= a) ++b;
      for (std::size_t attempt = 0; attempt < kInterEdgeAttempts; ++attempt) {
        const auto u = preferential_pick(graph_, members_[a], params_.alpha, {}, rng_);
        const auto v = preferential_pick(graph_, members_[b], params_.alpha, {}, rng_);
        if (graph_.add_edge(*u, *v) == EdgeInsert::kAdded) break;
      }
    }
  }

  const MlwParams& params_;
  Rng& rng_;
  Graph graph_;
  std::vector<std::vector<NodeId>> members_;
  DispatchCounts counts_;
};

}  // namespace

MlwBuild grow_mlw_once(const MlwParams& params, Rng& rng) {
  params.validate();
  return MlwGrowth(params, rng).run();
}

MlwBuild gen_mlw_detailed(const MlwParams& params, std::uint64_t seed, std::size_t max_attempts) {
  params.validate();
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(attempt_seed(seed, attempt));
    MlwBuild build = MlwGrowth(params, rng).run();
    if (is_connected(build.graph)) {
      build.attempts = attempt + 1;
      return build;
    }
  }
  throw GenerationError("MLW generation (n=" + std::to_string(params.n) +
                        ", m0=" + std::to_string(params.m0) +
                        ", N_LW=" + std::to_string(params.lw_count) + ") stayed disconnected after " +
                        std::to_string(max_attempts) + " attempts");
}

Graph gen_mlw(const MlwParams& params, std::uint64_t seed) {
  return gen_mlw_detailed(params, seed).graph;
}

std::size_t rg_edge_count(std::size_t n, double avg_degree) {
  return static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree / 2.0));
}

std::size_t sw_lattice_degree(double avg_degree) {
  return 2 * static_cast<std::size_t>(std::llround(avg_degree / 2.0));
}

std::size_t sf_edges_per_node(double avg_degree) {
  return static_cast<std::size_t>(std::llround(avg_degree / 2.0));
}

Graph random_graph_once(std::size_t n, std::size_t edge_count, Rng& rng) {
  require(edge_count <= n * (n - 1) / 2, "too many edges for a simple graph");
  Graph g(n);
  while (g.edge_count() < edge_count) {
    g.add_edge(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  }
  return g;
}

Graph small_world_once(std::size_t n, std::size_t lattice_degree, double rewire_prob, Rng& rng) {
  require(lattice_degree % 2 == 0 && lattice_degree >= 2 && lattice_degree < n,
          "lattice degree must be even and in [2, n)");
  Graph g(n);
  const std::size_t half = lattice_degree / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + j) % n));
    }
  }
  // Watts-Strogatz: rewire the far end of each lattice edge.
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(rewire_prob)) continue;
      const auto u = static_cast<NodeId>(i);
      const auto v = static_cast<NodeId>((i + j) % n);
      if (!g.has_edge(u, v) || g.degree(u) >= n - 1) continue;
      NodeId w = 0;
      do {
        w = static_cast<NodeId>(rng.below(n));
      } while (w == u || g.has_edge(u, w));
      g.remove_edge(u, v);
      g.add_edge(u, w);
    }
  }
  return g;
}

Graph scale_free_once(std::size_t n, std::size_t edges_per_node, Rng& rng) {
  const std::size_t m = edges_per_node;
  require(m >= 1 && m + 1 < n, "edges per node must be in [1, n - 1)");
  Graph g(n);
  // Endpoint multiset: sampling uniformly from it is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * n);
  for (NodeId u = 0; u <= m; ++u) {
    for (NodeId v = u + 1; v <= m; ++v) {
      g.add_edge(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> targets;
  for (auto fresh = static_cast<NodeId>(m + 1); fresh < n; ++fresh) {
    targets.clear();
    while (targets.size() < m) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (!contains(targets, t)) targets.push_back(t);
    }
    for (NodeId t : targets) {
      g.add_edge(fresh, t);
      endpoints.push_back(fresh);
      endpoints.push_back(t);
    }
  }
  return g;
}

Graph gen_baseline(const BaselineParams& params, std::uint64_t seed, std::size_t max_attempts) {
  params.validate();
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(attempt_seed(seed, attempt));
    Graph g;
    switch (params.kind) {
      case BaselineKind::kRandomGraph:
        g = random_graph_once(params.n, rg_edge_count(params.n, params.target_avg_degree), rng);
        break;
      case BaselineKind::kSmallWorld:
        g = small_world_once(params.n, sw_lattice_degree(params.target_avg_degree),
                             params.sw_rewire_prob, rng);
        break;
      case BaselineKind::kScaleFree:
        g = scale_free_once(params.n, sf_edges_per_node(params.target_avg_degree), rng);
        break;
    }
    if (is_connected(g)) return g;
  }
  throw GenerationError(to_string(params.kind) + " baseline (n=" + std::to_string(params.n) +
                        ") stayed disconnected after " + std::to_string(max_attempts) +
                        " attempts");
}

}  // namespace mlwng
