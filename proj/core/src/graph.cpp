#include "mlwng/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mlwng {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    g.adjacency_[u].reserve(n - 1);
    for (NodeId v = 0; v < n; ++v) {
      if (u != v) g.adjacency_[u].push_back(v);
    }
  }
  g.edge_count_ = n * (n - 1) / 2;
  return g;
}

NodeId Graph::add_node(CommunityId label) {
  adjacency_.emplace_back();
  if (communities_) communities_->push_back(label);
  return static_cast<NodeId>(adjacency_.size() - 1);
}

void Graph::check_node(NodeId u) const {
  if (u >= adjacency_.size()) {
    throw std::out_of_range("node id " + std::to_string(u) + " outside [0, " +
                            std::to_string(adjacency_.size()) + ")");
  }
}

EdgeInsert Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) return EdgeInsert::kSelfLoop;
  if (has_edge(u, v)) return EdgeInsert::kDuplicate;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  ++edge_count_;
  return EdgeInsert::kAdded;
}

namespace {

bool erase_value(std::vector<NodeId>& list, NodeId value) {
  auto it = std::find(list.begin(), list.end(), value);
  if (it == list.end()) return false;
  *it = list.back();
  list.pop_back();
  return true;
}

}  // namespace

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (!erase_value(adjacency_[u], v)) return false;
  erase_value(adjacency_[v], u);
  --edge_count_;
  return true;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeId target = &a == &adjacency_[u] ? v : u;
  return std::find(a.begin(), a.end(), target) != a.end();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::set_communities(std::vector<CommunityId> labels) {
  if (labels.size() != adjacency_.size()) {
    throw std::invalid_argument("community label count " + std::to_string(labels.size()) +
                                " does not match node count " +
                                std::to_string(adjacency_.size()));
  }
  communities_ = std::move(labels);
}

void Graph::set_community(NodeId u, CommunityId label) {
  check_node(u);
  if (!communities_) throw std::logic_error("graph has no community labels");
  (*communities_)[u] = label;
}

const std::vector<CommunityId>& Graph::communities() const {
  if (!communities_) throw std::logic_error("graph has no community labels");
  return *communities_;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.node_count() == b.node_count() && a.edges() == b.edges() &&
         a.communities_ == b.communities_;
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

GraphStats compute_stats(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("compute_stats needs at least 2 nodes");

  GraphStats stats;
  stats.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  stats.connected = is_connected(g);

  // Clustering: mark neighbors of u, count closed wedges.
  std::vector<NodeId> mark(n, static_cast<NodeId>(-1));
  double cc_sum = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const auto nbrs = g.neighbors(u);
    const std::size_t k = nbrs.size();
    if (k < 2) continue;
    for (NodeId v : nbrs) mark[v] = u;
    std::size_t links = 0;
    for (NodeId v : nbrs) {
      for (NodeId w : g.neighbors(v)) {
        if (mark[w] == u) ++links;
      }
    }
    // Each neighbor-neighbor link seen twice.
    cc_sum += static_cast<double>(links / 2) / (static_cast<double>(k) * (k - 1) / 2.0);
  }
  stats.avg_clustering = cc_sum / static_cast<double>(n);

  if (stats.connected) {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
    std::uint64_t total = 0;
    for (NodeId s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
      dist[s] = 0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = s;
      while (head < tail) {
        const NodeId u = queue[head++];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] == std::numeric_limits<std::uint32_t>::max()) {
            dist[v] = dist[u] + 1;
            queue[tail++] = v;
          }
        }
      }
      for (NodeId t = s + 1; t < n; ++t) total += dist[t];
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    stats.avg_path_length = static_cast<double>(total) / pairs;
  }
  return stats;
}

CommunityRatioReport community_ratio(const Graph& g) {
  if (!g.has_communities()) {
    throw std::invalid_argument("community_ratio requires community labels");
  }
  const auto& labels = g.communities();
  struct Tally {
    std::size_t size = 0;
    std::size_t intra = 0;
    std::size_t inter = 0;
  };
  std::map<CommunityId, Tally> tally;
  for (NodeId u = 0; u < g.node_count(); ++u) ++tally[labels[u]].size;
  for (const Edge& e : g.edges()) {
    const CommunityId a = labels[e.u];
    const CommunityId b = labels[e.v];
    if (a == b) {
      ++tally[a].intra;
    } else {
      ++tally[a].inter;
      ++tally[b].inter;
    }
  }

  CommunityRatioReport report;
  for (const auto& [id, t] : tally) {
    if (t.intra == 0) {
      report.undefined.push_back(id);
      continue;
    }
    report.per_community_ratio[id] =
        static_cast<double>(t.inter) / static_cast<double>(t.intra) / static_cast<double>(t.size);
  }
  if (!report.per_community_ratio.empty()) {
    double sum = 0.0;
    for (const auto& [id, r] : report.per_community_ratio) sum += r;
    const double count = static_cast<double>(report.per_community_ratio.size());
    report.mean_ratio = sum / count;
    double sq = 0.0;
    for (const auto& [id, r] : report.per_community_ratio) {
      sq += (r - report.mean_ratio) * (r - report.mean_ratio);
    }
    report.std = std::sqrt(sq / count);
  }
  return report;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "N " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (g.has_communities()) {
    const auto& labels = g.communities();
    for (NodeId u = 0; u < labels.size(); ++u) out << "C " << u << ' ' << labels[u] << '\n';
  }
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error("edge list line " + std::to_string(line_no) + ": " + why);
  };

  std::optional<Graph> g;
  std::vector<CommunityId> labels;
  std::vector<char> labelled;
  std::size_t label_count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (!g) {
      std::string tag;
      long long n = -1;
      if (!(fields >> tag >> n) || tag != "N" || n < 1) throw fail("expected 'N <node_count>'");
      g.emplace(static_cast<std::size_t>(n));
      continue;
    }
    if (line[0] == 'C') {
      std::string tag;
      long long node = -1, label = -1;
      if (!(fields >> tag >> node >> label) || node < 0 || label < 0) {
        throw fail("expected 'C <node> <community>'");
      }
      if (static_cast<std::size_t>(node) >= g->node_count()) throw fail("node id out of range");
      if (labels.empty()) {
        labels.assign(g->node_count(), 0);
        labelled.assign(g->node_count(), 0);
      }
      if (labelled[node]) throw fail("node labelled twice");
      labelled[node] = 1;
      labels[node] = static_cast<CommunityId>(label);
      ++label_count;
      continue;
    }
    long long u = -1, v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0) throw fail("expected '<u> <v>'");
    if (static_cast<std::size_t>(u) >= g->node_count() ||
        static_cast<std::size_t>(v) >= g->node_count()) {
      throw fail("node id out of range");
    }
    switch (g->add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v))) {
      case EdgeInsert::kSelfLoop:
        throw fail("self-loop");
      case EdgeInsert::kDuplicate:
        throw fail("duplicate edge");
      case EdgeInsert::kAdded:
        break;
    }
  }
  if (!g) throw std::runtime_error("edge list is empty");
  if (label_count > 0) {
    if (label_count != g->node_count()) {
      throw std::runtime_error("edge list labels " + std::to_string(label_count) + " of " +
                               std::to_string(g->node_count()) + " nodes");
    }
    g->set_communities(std::move(labels));
  }
  return std::move(*g);
}

}  // namespace mlwng
