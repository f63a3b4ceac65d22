#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curv {

using Edge = std::pair<int, int>;

// Immutable simple undirected graph: dense vertex indices, per-vertex display
// labels, sorted adjacency lists. No self-loops, no duplicate edges.
class Graph {
 public:
  static Graph build(std::vector<std::string> labels,
                     const std::vector<Edge>& edge_list) {
    Graph g;
    const int n = static_cast<int>(labels.size());
    g.labels_ = std::move(labels);
    g.adj_.assign(n, {});
    for (int i = 0; i < n; ++i) {
      if (!g.index_.emplace(g.labels_[i], i).second) {
        throw std::invalid_argument("duplicate vertex label: " + g.labels_[i]);
      }
    }
    for (auto [u, v] : edge_list) {
      if (u < 0 || u >= n || v < 0 || v >= n) {
        throw std::invalid_argument("edge endpoint out of range");
      }
      if (u == v) {
        throw std::invalid_argument("self-loop at vertex " + g.labels_[u]);
      }
      if (u > v) std::swap(u, v);
      g.edges_.emplace_back(u, v);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) !=
        g.edges_.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    for (auto [u, v] : g.edges_) {
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    return g;
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(int u) const { return static_cast<int>(adj_.at(u).size()); }
  const std::vector<int>& neighbors(int u) const { return adj_.at(u); }
  bool has_edge(int u, int v) const {
    const auto& a = adj_.at(u);
    return std::binary_search(a.begin(), a.end(), v);
  }
  // Edges as (u, v) with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label(int u) const { return labels_.at(u); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  Graph() = default;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> index_;
};

// BFS distances from a source; -1 marks unreachable vertices.
struct DistanceMap {
  int source = 0;
  std::vector<int> dist;
  bool reachable(int v) const { return dist[v] >= 0; }
};

// depth_limit < 0 means unbounded.
inline DistanceMap distances_from(const Graph& g, int s, int depth_limit = -1) {
  if (s < 0 || s >= g.vertex_count()) {
    throw std::invalid_argument("source vertex out of range");
  }
  DistanceMap dm{s, std::vector<int>(g.vertex_count(), -1)};
  std::queue<int> q;
  dm.dist[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    if (depth_limit >= 0 && dm.dist[u] >= depth_limit) continue;
    for (int v : g.neighbors(u)) {
      if (dm.dist[v] < 0) {
        dm.dist[v] = dm.dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dm;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  auto dm = distances_from(g, 0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!dm.reachable(v)) return false;
  }
  return true;
}

struct DiameterResult {
  int value = 0;
  std::vector<Edge> witnesses;  // every unordered pair at distance `value`
};

inline DiameterResult diameter(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
  if (!is_connected(g)) {
    throw std::invalid_argument("diameter requires a connected graph");
  }
  DiameterResult res;
  std::vector<std::vector<int>> dist;
  dist.reserve(g.vertex_count());
  for (int u = 0; u < g.vertex_count(); ++u) {
    dist.push_back(distances_from(g, u).dist);
  }
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      res.value = std::max(res.value, dist[u][v]);
    }
  }
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (int v = u + 1; v < g.vertex_count(); ++v) {
      if (dist[u][v] == res.value) res.witnesses.emplace_back(u, v);
    }
  }
  return res;
}

// All vertices lying on geodesics from x to y:
// { w : d(x,w) + d(w,y) = d(x,y) }.
inline std::vector<int> interval(const Graph& g, int x, int y) {
  if (!is_connected(g)) {
    throw std::invalid_argument("interval requires a connected graph");
  }
  auto from_x = distances_from(g, x);
  auto from_y = distances_from(g, y);
  std::vector<int> result;
  for (int w = 0; w < g.vertex_count(); ++w) {
    if (from_x.dist[w] + from_y.dist[w] == from_x.dist[y]) {
      result.push_back(w);
    }
  }
  return result;
}

inline std::vector<int> sorted_intersection(const std::vector<int>& a,
                                            const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline std::vector<int> sorted_difference(const std::vector<int>& a,
                                          const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline int common_neighbor_count(const Graph& g, int u, int v) {
  return static_cast<int>(
      sorted_intersection(g.neighbors(u), g.neighbors(v)).size());
}

inline bool is_triangle_free(const Graph& g) {
  for (auto [u, v] : g.edges()) {
    if (common_neighbor_count(g, u, v) > 0) return false;
  }
  return true;
}

inline bool is_regular(const Graph& g) {
  for (int u = 1; u < g.vertex_count(); ++u) {
    if (g.degree(u) != g.degree(0)) return false;
  }
  return true;
}

}  // namespace curv
