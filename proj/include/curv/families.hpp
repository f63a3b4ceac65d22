#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "curv/graph.hpp"

namespace curv {

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline std::string bit_label(std::uint32_t v, int n) {
  std::string s(n, '0');
  for (int b = 0; b < n; ++b) {
    if (v >> (n - 1 - b) & 1u) s[b] = '1';
  }
  return s;
}

inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

inline int intersection_size(const std::vector<int>& a,
                             const std::vector<int>& b) {
  return static_cast<int>(sorted_intersection(a, b).size());
}

inline std::string set_label(const std::vector<int>& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace detail

inline Graph path_graph(int n) {
  detail::require(n >= 1, "path: need n >= 1");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::build(std::move(labels), edges);
}

inline Graph cycle_graph(int n) {
  detail::require(n >= 3, "cycle: need n >= 3");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::build(std::move(labels), edges);
}

inline Graph complete_graph(int n) {
  detail::require(n >= 1, "complete: need n >= 1");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::build(std::move(labels), edges);
}

// K_m with the k-edge matching {0-1, 2-3, ...} removed.
inline Graph complete_minus_matching(int m, int k) {
  detail::require(m >= 2 && k >= 0 && 2 * k <= m,
                  "complete-minus-matching: need 0 <= 2k <= m");
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      bool matched = (j == i + 1) && (i % 2 == 0) && (i / 2 < k);
      if (!matched) edges.emplace_back(i, j);
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Cocktail party graph CP(n) = K_{2n} minus a perfect matching.
inline Graph cocktail_party(int n) {
  detail::require(n >= 2, "cocktail: need n >= 2");
  return complete_minus_matching(2 * n, n);
}

// Vertices are length-n bitstrings, edges join strings at Hamming distance 1.
inline Graph hypercube(int n) {
  detail::require(n >= 1 && n <= 20, "hypercube: need 1 <= n <= 20");
  const std::uint32_t size = 1u << n;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (std::uint32_t v = 0; v < size; ++v) {
    labels.push_back(detail::bit_label(v, n));
  }
  for (std::uint32_t v = 0; v < size; ++v) {
    for (int b = 0; b < n; ++b) {
      std::uint32_t w = v ^ (1u << b);
      if (v < w) edges.emplace_back(static_cast<int>(v), static_cast<int>(w));
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Johnson graph J(n,k): vertices are k-subsets of {0..n-1}, edges join
// subsets meeting in k-1 elements.
inline Graph johnson(int n, int k) {
  detail::require(n > k && k >= 1, "johnson: need n > k >= 1");
  auto subsets = detail::k_subsets(n, k);
  std::vector<std::string> labels;
  for (const auto& s : subsets) labels.push_back(detail::set_label(s));
  std::vector<Edge> edges;
  for (size_t i = 0; i < subsets.size(); ++i) {
    for (size_t j = i + 1; j < subsets.size(); ++j) {
      if (detail::intersection_size(subsets[i], subsets[j]) == k - 1) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Demi-cube: even-weight length-n bitstrings, edges at Hamming distance 2.
inline Graph demicube(int n) {
  detail::require(n >= 2 && n <= 20, "demicube: need 2 <= n <= 20");
  std::vector<std::uint32_t> verts;
  for (std::uint32_t v = 0; v < (1u << n); ++v) {
    if (std::popcount(v) % 2 == 0) verts.push_back(v);
  }
  std::vector<std::string> labels;
  for (auto v : verts) labels.push_back(detail::bit_label(v, n));
  std::vector<Edge> edges;
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (std::popcount(verts[i] ^ verts[j]) == 2) {
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return Graph::build(std::move(labels), edges);
}

// The 56-vertex Gosset graph, built as two copies of J(8,2): inside a copy,
// pairs are adjacent when they share an element; across copies, when they
// are disjoint. 27-regular with diameter 3.
inline Graph gosset() {
  auto pairs = detail::k_subsets(8, 2);  // 28 pairs, lexicographic
  const int half = static_cast<int>(pairs.size());
  std::vector<std::string> labels;
  for (const auto& p : pairs) labels.push_back("a" + detail::set_label(p));
  for (const auto& p : pairs) labels.push_back("b" + detail::set_label(p));
  std::vector<Edge> edges;
  for (int i = 0; i < half; ++i) {
    for (int j = i + 1; j < half; ++j) {
      if (detail::intersection_size(pairs[i], pairs[j]) == 1) {
        edges.emplace_back(i, j);
        edges.emplace_back(half + i, half + j);
      }
    }
  }
  for (int i = 0; i < half; ++i) {
    for (int j = 0; j < half; ++j) {
      if (detail::intersection_size(pairs[i], pairs[j]) == 0) {
        edges.emplace_back(i, half + j);
      }
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Box product; vertex (i,j) of g1 x g2 gets label "l1|l2".
inline Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      labels.push_back(g1.label(i) + "|" + g2.label(j));
    }
  }
  auto id = [n2](int i, int j) { return i * n2 + j; };
  std::vector<Edge> edges;
  for (int i = 0; i < n1; ++i) {
    for (auto [a, b] : g2.edges()) edges.emplace_back(id(i, a), id(i, b));
  }
  for (auto [a, b] : g1.edges()) {
    for (int j = 0; j < n2; ++j) edges.emplace_back(id(a, j), id(b, j));
  }
  return Graph::build(std::move(labels), edges);
}

// Irregular diameter-3 family on 2 + 2(2r+t) vertices: poles x,y joined to
// rings u_0..u_{2r+t-1} and v_0..v_{2r+t-1}; u_i ~ v_j iff j lies in the
// cyclic window {i, ..., i+r+1}; each ring induces K_{2r+1} (t=1) or
// K_{2r+2} minus the matching {i, i+r+1} (t=2).
inline Graph irregular_sharp(int r, int t) {
  detail::require(r >= 1, "irregular-sharp: need r >= 1");
  detail::require(t == 1 || t == 2, "irregular-sharp: need t in {1,2}");
  const int m = 2 * r + t;
  std::vector<std::string> labels = {"x", "y"};
  for (int i = 0; i < m; ++i) labels.push_back("u" + std::to_string(i));
  for (int j = 0; j < m; ++j) labels.push_back("v" + std::to_string(j));
  auto u = [](int i) { return 2 + i; };
  auto v = [m](int j) { return 2 + m + j; };

  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.emplace_back(0, u(i));
  for (int j = 0; j < m; ++j) edges.emplace_back(1, v(j));
  for (int i = 0; i < m; ++i) {
    for (int s = 0; s <= r + 1; ++s) edges.emplace_back(u(i), v((i + s) % m));
  }
  auto ring_removed = [&](int i, int j) {
    if (t == 1) return false;
    return (j - i) % m == r + 1 || (i - j + m) % m == r + 1;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!ring_removed(i, j)) {
        edges.emplace_back(u(i), u(j));
        edges.emplace_back(v(i), v(j));
      }
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Seeded G(n, p) with p given as an integer percentage. Uses raw mt19937
// draws so the output is identical across standard library implementations.
inline Graph erdos_renyi(int n, int percent, unsigned seed) {
  detail::require(n >= 1, "er: need n >= 1");
  detail::require(percent >= 0 && percent <= 100,
                  "er: percent must be in [0,100]");
  std::mt19937 rng(seed);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (static_cast<int>(rng() % 100) < percent) edges.emplace_back(i, j);
    }
  }
  return Graph::build(std::move(labels), edges);
}

// Bundled 6-vertex irregular example. The marked edge xy has deg(x)=3,
// deg(y)=4; x1 hangs off x, z is a common neighbor, y1 (adjacent to z) and
// y2 hang off y.
inline Graph demo_graph() {
  std::vector<std::string> labels = {"x", "y", "x1", "z", "y1", "y2"};
  std::vector<Edge> edges = {{0, 1}, {0, 2}, {0, 3}, {1, 3},
                             {1, 4}, {1, 5}, {3, 4}};
  return Graph::build(std::move(labels), edges);
}

// CLI-facing dispatcher for families with integer parameters.
inline Graph generate(const std::string& family,
                      const std::vector<long long>& params) {
  auto arity = [&](size_t k) {
    detail::require(params.size() == k,
                    "family '" + family + "' expects " + std::to_string(k) +
                        " integer parameter(s)");
  };
  auto p = [&](size_t i) { return static_cast<int>(params[i]); };
  if (family == "path") { arity(1); return path_graph(p(0)); }
  if (family == "cycle") { arity(1); return cycle_graph(p(0)); }
  if (family == "complete") { arity(1); return complete_graph(p(0)); }
  if (family == "complete-minus-matching") {
    arity(2);
    return complete_minus_matching(p(0), p(1));
  }
  if (family == "cocktail") { arity(1); return cocktail_party(p(0)); }
  if (family == "hypercube") { arity(1); return hypercube(p(0)); }
  if (family == "johnson") { arity(2); return johnson(p(0), p(1)); }
  if (family == "demicube") { arity(1); return demicube(p(0)); }
  if (family == "gosset") { arity(0); return gosset(); }
  if (family == "irregular-sharp") { arity(2); return irregular_sharp(p(0), p(1)); }
  if (family == "er") {
    arity(3);
    return erdos_renyi(p(0), p(1), static_cast<unsigned>(params[2]));
  }
  if (family == "demo") { arity(0); return demo_graph(); }
  throw std::invalid_argument("unknown family: " + family);
}

namespace detail {

inline int family_arity(const std::string& family) {
  if (family == "gosset" || family == "demo") return 0;
  if (family == "path" || family == "cycle" || family == "complete" ||
      family == "cocktail" || family == "hypercube" || family == "demicube") {
    return 1;
  }
  if (family == "complete-minus-matching" || family == "johnson" ||
      family == "irregular-sharp") {
    return 2;
  }
  if (family == "er") return 3;
  if (family == "cartesian") return -1;  // two nested specs
  throw std::invalid_argument("unknown family: " + family);
}

inline std::string normalize_family(std::string name) {
  for (char& c : name) {
    if (c == '_') c = '-';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return name;
}

inline Graph parse_spec_at(const std::vector<std::string>& tokens,
                           size_t& pos) {
  require(pos < tokens.size(), "missing family name");
  std::string family = normalize_family(tokens[pos++]);
  if (family == "cartesian") {
    Graph g1 = parse_spec_at(tokens, pos);
    Graph g2 = parse_spec_at(tokens, pos);
    return cartesian_product(g1, g2);
  }
  int arity = family_arity(family);
  std::vector<long long> params;
  for (int i = 0; i < arity; ++i) {
    require(pos < tokens.size(),
            "family '" + family + "' expects " + std::to_string(arity) +
                " integer parameter(s)");
    try {
      params.push_back(std::stoll(tokens[pos]));
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer parameter: '" +
                                  tokens[pos] + "'");
    }
    ++pos;
  }
  return generate(family, params);
}

}  // namespace detail

// Prefix family spec, e.g. {"hypercube","3"} or
// {"cartesian","hypercube","2","cocktail","3"}.
inline Graph parse_family_spec(const std::vector<std::string>& tokens) {
  size_t pos = 0;
  Graph g = detail::parse_spec_at(tokens, pos);
  detail::require(pos == tokens.size(), "trailing tokens after family spec");
  return g;
}

}  // namespace curv
