#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace mlwng {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

/// Unordered node pair stored with first < second.
struct Edge {
  NodeId u;
  NodeId v;

  static Edge make(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class EdgeInsert { kAdded, kSelfLoop, kDuplicate };

/// Undirected simple graph with optional ground-truth community labels.
///
/// Adjacency lists give O(deg) neighbor iteration. Node ids are dense in
/// [0, node_count). Self-loops and parallel edges are rejected on insert.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  /// Complete graph K_n.
  static Graph complete(std::size_t n);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Appends an isolated node and returns its id. When labels are present
  /// the new node gets `label`.
  NodeId add_node(CommunityId label = 0);

  /// Inserts {u, v}. Rejections leave the graph unchanged; the caller
  /// decides whether to resample endpoints. Throws std::out_of_range for
  /// ids outside [0, node_count).
  EdgeInsert add_edge(NodeId u, NodeId v);

  /// Removes {u, v}; returns false if the edge was absent.
  bool remove_edge(NodeId u, NodeId v);

  bool has_edge(NodeId u, NodeId v) const;

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_.at(u); }
  std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }

  /// All edges, sorted, each with u < v.
  std::vector<Edge> edges() const;

  /// Installs one label per node. Throws std::invalid_argument on a size
  /// mismatch.
  void set_communities(std::vector<CommunityId> labels);
  void clear_communities() { communities_.reset(); }
  void set_community(NodeId u, CommunityId label);
  bool has_communities() const { return communities_.has_value(); }
  const std::vector<CommunityId>& communities() const;
  CommunityId community_of(NodeId u) const { return communities().at(u); }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_node(NodeId u) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::optional<std::vector<CommunityId>> communities_;
};

/// True iff a traversal from node 0 reaches every node.
bool is_connected(const Graph& g);

struct GraphStats {
  double avg_degree = 0.0;
  /// Mean shortest-path hop count over unordered pairs; empty when the
  /// graph is disconnected.
  std::optional<double> avg_path_length;
  double avg_clustering = 0.0;
  bool connected = false;
};

/// Exact statistics: all-pairs BFS for the path length, per-node triangle
/// counts for clustering (degree < 2 contributes 0). Requires >= 2 nodes.
GraphStats compute_stats(const Graph& g);

struct CommunityRatioReport {
  /// (inter edges / intra edges) / community size, per community.
  std::map<CommunityId, double> per_community_ratio;
  /// Communities with no intra edge; excluded from the mean.
  std::vector<CommunityId> undefined;
  double mean_ratio = 0.0;
  /// Population standard deviation of the per-community ratios.
  double std = 0.0;
};

/// Inter/intra edge ratio per node for every labelled community. An edge
/// whose endpoints carry different labels counts as inter for both sides.
/// Throws std::invalid_argument when the graph has no labels.
CommunityRatioReport community_ratio(const Graph& g);

// Edge-list text format:
//   N <node_count>
//   <u> <v>            one line per edge, u < v, sorted
//   C <node> <label>   one line per node, only if labels are present
void write_edge_list(std::ostream& out, const Graph& g);

/// Throws std::runtime_error with the offending line number on malformed
/// input or on edges that violate the simple-graph invariants.
Graph read_edge_list(std::istream& in);

}  // namespace mlwng
