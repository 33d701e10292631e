#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mlwng/graph.hpp"
#include "mlwng/rng.hpp"
#include "oracles.hpp"

namespace mlwng {
namespace {

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (NodeId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph random_graph(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

TEST(Graph, AddEdgeOnEmptyGraph) {
  Graph g(3);
  EXPECT_EQ(g.add_edge(0, 1), EdgeInsert::kAdded);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.has_edge(1, 0));
}

TEST(Graph, SelfLoopRejectedAndGraphUnchanged) {
  Graph g(3);
  g.add_edge(0, 1);
  const Graph before = g;
  EXPECT_EQ(g.add_edge(0, 0), EdgeInsert::kSelfLoop);
  EXPECT_EQ(g, before);
}

TEST(Graph, DuplicateEdgeRejected) {
  Graph g(3);
  EXPECT_EQ(g.add_edge(0, 1), EdgeInsert::kAdded);
  EXPECT_EQ(g.add_edge(1, 0), EdgeInsert::kDuplicate);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, OutOfRangeNodeThrows) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(0, 3), std::out_of_range);
}

TEST(Graph, AddThenRemoveRestoresEdgeSet) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(15, 0.3, rng);
    const auto before = g.edges();
    const auto u = static_cast<NodeId>(rng.below(15));
    const auto v = static_cast<NodeId>(rng.below(15));
    if (u == v || g.has_edge(u, v)) continue;
    ASSERT_EQ(g.add_edge(u, v), EdgeInsert::kAdded);
    ASSERT_TRUE(g.remove_edge(v, u));
    EXPECT_EQ(g.edges(), before);
  }
}

TEST(Graph, RemoveMissingEdgeReturnsFalse) {
  Graph g(3);
  EXPECT_FALSE(g.remove_edge(0, 2));
}

TEST(Graph, CommunitySizeMismatchThrows) {
  Graph g(3);
  EXPECT_THROW(g.set_communities({0, 1}), std::invalid_argument);
}

TEST(Graph, IsConnected) {
  EXPECT_TRUE(is_connected(path_graph(3)));
  Graph two_edges(4);
  two_edges.add_edge(0, 1);
  two_edges.add_edge(2, 3);
  EXPECT_FALSE(is_connected(two_edges));
  EXPECT_TRUE(is_connected(Graph::complete(5)));
}

TEST(GraphStats, CompleteGraphK4) {
  const GraphStats s = compute_stats(Graph::complete(4));
  EXPECT_DOUBLE_EQ(s.avg_degree, 3.0);
  ASSERT_TRUE(s.avg_path_length);
  EXPECT_DOUBLE_EQ(*s.avg_path_length, 1.0);
  EXPECT_DOUBLE_EQ(s.avg_clustering, 1.0);
  EXPECT_TRUE(s.connected);
}

TEST(GraphStats, CompleteGraphsThreeToTwenty) {
  for (std::size_t n = 3; n <= 20; ++n) {
    const GraphStats s = compute_stats(Graph::complete(n));
    EXPECT_DOUBLE_EQ(s.avg_degree, static_cast<double>(n - 1)) << n;
    EXPECT_DOUBLE_EQ(*s.avg_path_length, 1.0) << n;
    EXPECT_DOUBLE_EQ(s.avg_clustering, 1.0) << n;
  }
}

TEST(GraphStats, PathOfThree) {
  const GraphStats s = compute_stats(path_graph(3));
  EXPECT_DOUBLE_EQ(s.avg_degree, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(*s.avg_path_length, (1.0 + 1.0 + 2.0) / 3.0);
  EXPECT_DOUBLE_EQ(s.avg_clustering, 0.0);
}

TEST(GraphStats, DisconnectedHasNoPathLength) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  const GraphStats s = compute_stats(g);
  EXPECT_FALSE(s.connected);
  EXPECT_FALSE(s.avg_path_length);
}

TEST(GraphStats, MatchesFloydWarshallAndBruteClustering) {
  Rng rng(2024);
  int connected_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(29);
    const Graph g = random_graph(n, 0.05 + 0.4 * rng.unit(), rng);
    const GraphStats s = compute_stats(g);
    const double fw = oracle::floyd_warshall_path_length(g);
    EXPECT_EQ(s.connected, fw >= 0.0);
    if (fw >= 0.0) {
      ++connected_cases;
      ASSERT_TRUE(s.avg_path_length);
      EXPECT_NEAR(*s.avg_path_length, fw, 1e-12);
    }
    EXPECT_NEAR(s.avg_clustering, oracle::brute_clustering(g), 1e-12);
    EXPECT_DOUBLE_EQ(s.avg_degree, 2.0 * g.edge_count() / static_cast<double>(n));
  }
  EXPECT_GT(connected_cases, 50);
}

TEST(GraphStats, RequiresTwoNodes) {
  EXPECT_THROW(compute_stats(Graph(1)), std::invalid_argument);
}

// Community of `size` nodes fully connected, plus one edge to an outside node.
Graph clique_with_one_external_edge(std::size_t size) {
  Graph g = Graph::complete(size);
  const NodeId outside = g.add_node();
  const NodeId partner = g.add_node();
  g.add_edge(outside, partner);
  g.add_edge(0, outside);
  std::vector<CommunityId> labels(size, 0);
  labels.push_back(1);
  labels.push_back(1);
  g.set_communities(labels);
  return g;
}

TEST(CommunityRatio, FourNodeWorkedExample) {
  const CommunityRatioReport r = community_ratio(clique_with_one_external_edge(4));
  EXPECT_DOUBLE_EQ(r.per_community_ratio.at(0), (1.0 / 6.0) / 4.0);
  EXPECT_NEAR(r.per_community_ratio.at(0), 0.0417, 5e-5);
}

TEST(CommunityRatio, SixNodeCliqueIsFifteenToOne) {
  const CommunityRatioReport r = community_ratio(clique_with_one_external_edge(6));
  EXPECT_DOUBLE_EQ(r.per_community_ratio.at(0) * 6.0, 1.0 / 15.0);
}

TEST(CommunityRatio, SingleCommunityIsZero) {
  Graph g = Graph::complete(5);
  g.set_communities(std::vector<CommunityId>(5, 3));
  const CommunityRatioReport r = community_ratio(g);
  EXPECT_DOUBLE_EQ(r.mean_ratio, 0.0);
  EXPECT_DOUBLE_EQ(r.std, 0.0);
}

TEST(CommunityRatio, CommunityWithoutIntraEdgesIsFlaggedAndExcluded) {
  Graph g = Graph::complete(3);
  g.add_node();
  g.add_edge(0, 3);
  g.set_communities({0, 0, 0, 1});
  const CommunityRatioReport r = community_ratio(g);
  ASSERT_EQ(r.undefined.size(), 1u);
  EXPECT_EQ(r.undefined[0], 1u);
  EXPECT_EQ(r.per_community_ratio.size(), 1u);
  EXPECT_DOUBLE_EQ(r.mean_ratio, (1.0 / 3.0) / 3.0);
}

TEST(CommunityRatio, NoLabelsThrows) {
  EXPECT_THROW(community_ratio(Graph::complete(3)), std::invalid_argument);
}

TEST(CommunityRatio, MatchesOracleAndInvariantUnderRelabeling) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 12 + rng.below(20);
    Graph g = random_graph(n, 0.3, rng);
    std::vector<CommunityId> labels(n);
    for (auto& l : labels) l = static_cast<CommunityId>(rng.below(4));
    g.set_communities(labels);
    const CommunityRatioReport base = community_ratio(g);

    const auto expected = oracle::brute_ratios(g);
    ASSERT_EQ(base.per_community_ratio.size(), expected.size());
    for (const auto& [c, ratio] : expected) {
      EXPECT_NEAR(base.per_community_ratio.at(c), ratio, 1e-12);
    }

    // Permute node ids and map community ids through an injective relabel.
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    Graph h(n);
    for (const Edge& e : g.edges()) h.add_edge(perm[e.u], perm[e.v]);
    std::vector<CommunityId> relabelled(n);
    for (NodeId u = 0; u < n; ++u) relabelled[perm[u]] = 100 + 7 * labels[u];
    h.set_communities(relabelled);
    const CommunityRatioReport moved = community_ratio(h);
    EXPECT_NEAR(moved.mean_ratio, base.mean_ratio, 1e-12);
    EXPECT_NEAR(moved.std, base.std, 1e-12);
    for (const auto& [c, ratio] : base.per_community_ratio) {
      EXPECT_NEAR(moved.per_community_ratio.at(100 + 7 * c), ratio, 1e-12);
    }
  }
}

TEST(EdgeList, RoundTripWithLabels) {
  Graph g = clique_with_one_external_edge(4);
  std::stringstream buffer;
  write_edge_list(buffer, g);
  const Graph back = read_edge_list(buffer);
  EXPECT_EQ(back, g);
}

TEST(EdgeList, FormatIsSortedAndStable) {
  Graph g(3);
  g.add_edge(2, 1);
  g.add_edge(0, 2);
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "N 3\n0 2\n1 2\n");
}

TEST(EdgeList, MalformedInputNamesLine) {
  std::istringstream in("N 3\n0 1\n1 1\n");
  try {
    read_edge_list(in);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace mlwng
