#pragma once

// Independent reference computations for tests. Deliberately naive.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "mlwng/graph.hpp"
#include "mlwng/naming_game.hpp"

namespace mlwng::oracle {

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const Edge& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

/// Mean shortest-path length by Floyd-Warshall; -1 when disconnected.
inline double floyd_warshall_path_length(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto inf = std::numeric_limits<std::uint64_t>::max() / 4;
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i][j] >= inf) return -1.0;
      sum += static_cast<double>(d[i][j]);
    }
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

/// Mean local clustering from the adjacency matrix, degree < 2 counts 0.
inline double brute_clustering(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = g.node_count();
  double sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t u = 0; u < n; ++u)
      if (a[v][u]) nb.push_back(u);
    if (nb.size() < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (a[nb[i]][nb[j]]) ++links;
    sum += static_cast<double>(links) / (static_cast<double>(nb.size() * (nb.size() - 1)) / 2.0);
  }
  return sum / static_cast<double>(n);
}

/// Per-community (inter / intra) / size computed from the edge list.
inline std::map<CommunityId, double> brute_ratios(const Graph& g) {
  std::map<CommunityId, std::size_t> size, intra, inter;
  for (NodeId u = 0; u < g.node_count(); ++u) ++size[g.community_of(u)];
  for (const Edge& e : g.edges()) {
    const CommunityId a = g.community_of(e.u), b = g.community_of(e.v);
    if (a == b) {
      ++intra[a];
    } else {
      ++inter[a];
      ++inter[b];
    }
  }
  std::map<CommunityId, double> out;
  for (const auto& [c, s] : size) {
    if (intra[c] == 0) continue;
    out[c] = static_cast<double>(inter[c]) / static_cast<double>(intra[c]) / static_cast<double>(s);
  }
  return out;
}

struct WordCounts {
  std::uint64_t total = 0;
  std::uint64_t distinct = 0;
};

/// Recount of N_total / N_diff straight from the memories.
inline WordCounts recount(const NamingGame& game) {
  WordCounts c;
  std::set<NameId> names;
  for (NodeId a = 0; a < game.agent_count(); ++a) {
    const auto mem = game.memory(a);
    c.total += mem.size();
    names.insert(mem.begin(), mem.end());
  }
  c.distinct = names.size();
  return c;
}

inline bool memories_duplicate_free(const NamingGame& game) {
  for (NodeId a = 0; a < game.agent_count(); ++a) {
    const auto mem = game.memory(a);
    std::set<NameId> s(mem.begin(), mem.end());
    if (s.size() != mem.size()) return false;
  }
  return true;
}

/// Pearson chi-square goodness-of-fit p-value. Categories with zero
/// expected probability must have zero counts and are dropped.
inline double chi_square_p_value(const std::vector<std::uint64_t>& observed,
                                 const std::vector<double>& probabilities) {
  const double total =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  double stat = 0.0;
  int categories = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    const double expected = total * probabilities[i];
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
    ++categories;
  }
  const boost::math::chi_squared dist(categories - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Quartiles by the textbook rule: position (n - 1) q between order
/// statistics, then the 1.5 IQR fences.
struct BoxOracle {
  double median, q1, q3, low, high;
  std::vector<double> outliers;
};

inline BoxOracle box_oracle(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  BoxOracle b{q(0.5), q(0.25), q(0.75), 0, 0, {}};
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr, hi_fence = b.q3 + 1.5 * iqr;
  std::vector<double> inliers;
  for (double x : v) (x < lo_fence || x > hi_fence ? b.outliers : inliers).push_back(x);
  b.low = inliers.front();
  b.high = inliers.back();
  return b;
}

}  // namespace mlwng::oracle
