#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curv/graph.hpp"
#include "curv/rational.hpp"
#include "curv/transport.hpp"

namespace curv {

// Local transport problem at an edge xy, normalized so deg(x) <= deg(y).
// Left sites are all of N(x) (y included) carrying mass c_x - c_y on
// N(x) ∩ N[y] and c_x elsewhere; right sites are N(y) \ N[x] carrying c_y
// each, where c_x d_x = c_y d_y = lcm(d_x, d_y). Costs are graph distances,
// which lie in {1,2,3} here.
struct BlowupInstance {
  int x = -1, y = -1;
  bool swapped = false;  // input edge arrived as (y, x)
  long long dx = 0, dy = 0, cx = 0, cy = 0, lcm = 0;
  std::vector<int> common_nbrs;  // N(x) ∩ N(y), sorted
  std::vector<int> left_sites;   // N(x), sorted
  std::vector<long long> mu_x;
  std::vector<int> right_sites;  // N(y) \ N[x], sorted
  std::vector<long long> mu_y;
  std::vector<std::vector<long long>> cost;
  std::vector<std::pair<int, int>> unit_pairs;  // site indices at distance 1
};

namespace detail {

inline void require_edge(const Graph& g, int x, int y) {
  if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count() ||
      !g.has_edge(x, y)) {
    throw std::invalid_argument(
        "curvature is computed for adjacent vertices only; a lower bound "
        "over edges extends to all vertex pairs");
  }
  if (!is_connected(g)) {
    throw std::invalid_argument("curvature requires a connected graph");
  }
}

}  // namespace detail

inline BlowupInstance blowup_instance(const Graph& g, int x, int y) {
  detail::require_edge(g, x, y);
  BlowupInstance inst;
  inst.x = x;
  inst.y = y;
  if (g.degree(x) > g.degree(y)) {
    std::swap(inst.x, inst.y);
    inst.swapped = true;
  }
  inst.dx = g.degree(inst.x);
  inst.dy = g.degree(inst.y);
  inst.lcm = std::lcm(inst.dx, inst.dy);
  inst.cx = inst.lcm / inst.dx;
  inst.cy = inst.lcm / inst.dy;
  inst.common_nbrs =
      sorted_intersection(g.neighbors(inst.x), g.neighbors(inst.y));

  inst.left_sites = g.neighbors(inst.x);
  for (int u : inst.left_sites) {
    bool in_closed_ny = (u == inst.y) || g.has_edge(u, inst.y);
    inst.mu_x.push_back(in_closed_ny ? inst.cx - inst.cy : inst.cx);
  }
  for (int v : g.neighbors(inst.y)) {
    if (v != inst.x && !g.has_edge(v, inst.x)) {
      inst.right_sites.push_back(v);
      inst.mu_y.push_back(inst.cy);
    }
  }

  inst.cost.assign(inst.left_sites.size(),
                   std::vector<long long>(inst.right_sites.size(), 0));
  for (size_t i = 0; i < inst.left_sites.size(); ++i) {
    auto dm = distances_from(g, inst.left_sites[i], 3);
    for (size_t j = 0; j < inst.right_sites.size(); ++j) {
      int d = dm.dist[inst.right_sites[j]];
      if (d < 1 || d > 3) {
        throw std::logic_error("blow-up cost outside {1,2,3}");
      }
      inst.cost[i][j] = d;
      if (d == 1) {
        inst.unit_pairs.emplace_back(static_cast<int>(i),
                                     static_cast<int>(j));
      }
    }
  }
  return inst;
}

inline TransportInstance transport_instance(const BlowupInstance& inst) {
  return TransportInstance{inst.mu_x, inst.mu_y, inst.cost};
}

struct CurvatureReport {
  BlowupInstance inst;
  IntegerCoupling coupling;  // an optimal coupling between mu_x and mu_y
  Rational kappa;
  Rational upper_bound;      // (|N(x) ∩ N(y)| + 2) / d_y
  bool bound_attained = false;
};

inline CurvatureReport edge_curvature(const Graph& g, int x, int y) {
  CurvatureReport rep;
  rep.inst = blowup_instance(g, x, y);
  rep.coupling = min_cost_transport(transport_instance(rep.inst));
  rep.kappa = Rational(rep.inst.dy + 1, rep.inst.dy) -
              Rational(rep.coupling.cost, rep.inst.lcm);
  rep.upper_bound = Rational(
      static_cast<long long>(rep.inst.common_nbrs.size()) + 2, rep.inst.dy);
  rep.bound_attained =
      has_perfect_matching(rep.inst.mu_x, rep.inst.mu_y, rep.inst.unit_pairs)
          .perfect;
  return rep;
}

inline std::pair<Rational, bool> curvature_upper_bound(const Graph& g, int x,
                                                       int y) {
  auto inst = blowup_instance(g, x, y);
  Rational bound(static_cast<long long>(inst.common_nbrs.size()) + 2,
                 inst.dy);
  bool attained =
      has_perfect_matching(inst.mu_x, inst.mu_y, inst.unit_pairs).perfect;
  return {bound, attained};
}

inline Rational default_lazy_alpha(const Graph& g, int x, int y) {
  return Rational(1, std::max(g.degree(x), g.degree(y)) + 1);
}

// kappa_alpha(x,y) / (1 - alpha), computed exactly: both lazy measures are
// scaled by den(alpha) * lcm(d_x, d_y) to integer masses and solved as an
// integer transport problem over N[x] x N[y]. For
// alpha >= 1/(max(d_x,d_y)+1) this equals the curvature itself; at alpha = 0
// it is the non-lazy (Ollivier) value.
inline Rational lazy_lp_curvature(const Graph& g, int x, int y,
                                  const Rational& alpha) {
  detail::require_edge(g, x, y);
  if (alpha < 0 || alpha >= 1) {
    throw std::invalid_argument("alpha must lie in [0, 1)");
  }
  if (rational_den(alpha) > 1000000000) {
    throw std::invalid_argument("alpha denominator too large");
  }
  const long long q = rational_den(alpha).convert_to<long long>();
  const long long p = rational_num(alpha).convert_to<long long>();
  const long long dx = g.degree(x), dy = g.degree(y);
  const long long lcm = std::lcm(dx, dy);
  const long long cx = lcm / dx, cy = lcm / dy;
  const long long scale = q * lcm;

  std::vector<int> left = {x}, right = {y};
  std::vector<long long> supply = {p * lcm}, demand = {p * lcm};
  for (int u : g.neighbors(x)) {
    left.push_back(u);
    supply.push_back((q - p) * cx);
  }
  for (int v : g.neighbors(y)) {
    right.push_back(v);
    demand.push_back((q - p) * cy);
  }
  std::vector<std::vector<long long>> cost(
      left.size(), std::vector<long long>(right.size(), 0));
  for (size_t i = 0; i < left.size(); ++i) {
    auto dm = distances_from(g, left[i], 3);
    for (size_t j = 0; j < right.size(); ++j) {
      int d = dm.dist[right[j]];
      if (d < 0) throw std::logic_error("lazy-walk supports not within reach");
      cost[i][j] = d;
    }
  }
  auto coupling = min_cost_transport({supply, demand, cost});
  // (1 - W) / (1 - alpha) with W = cost / scale.
  return Rational(scale - coupling.cost, scale) * Rational(q, q - p);
}

// Integer 1-Lipschitz test function on N[x] ∪ N[y] with f(x)=0, f(y)=1,
// witnessing the curvature through the Laplacian gradient.
struct LipschitzWitness {
  std::map<int, int> f;
  Rational gradient;
};

// Exhaustive minimization of Δf(x) - Δf(y) over integer functions on
// S = N[x] ∪ N[y] with f(x)=0, f(y)=1 and |f(u)-f(v)| <= d(u,v) for all
// u,v in S (full-graph distances). Any such restriction extends to a global
// 1-Lipschitz function via the distance envelope, and Δf at x,y only reads
// S, so the minimum over S is the curvature. Values stay in [-2,2]
// automatically because everything in S is within distance 2 of x.
inline std::pair<Rational, LipschitzWitness> lipschitz_curvature(
    const Graph& g, int x, int y) {
  detail::require_edge(g, x, y);
  std::vector<int> support;
  {
    std::vector<int> nx = g.neighbors(x), ny = g.neighbors(y);
    nx.push_back(x);
    ny.push_back(y);
    std::sort(nx.begin(), nx.end());
    std::sort(ny.begin(), ny.end());
    std::set_union(nx.begin(), nx.end(), ny.begin(), ny.end(),
                   std::back_inserter(support));
  }
  if (support.size() > 16) {
    throw std::invalid_argument(
        "lipschitz_curvature: support larger than 16 vertices");
  }

  // Assignment order: x, y, then the rest by vertex index.
  std::vector<int> order = {x, y};
  for (int v : support) {
    if (v != x && v != y) order.push_back(v);
  }
  const int k = static_cast<int>(order.size());
  std::vector<std::vector<int>> dist(k, std::vector<int>(k, 0));
  for (int i = 0; i < k; ++i) {
    auto dm = distances_from(g, order[i]);
    for (int j = 0; j < k; ++j) dist[i][j] = dm.dist[order[j]];
  }
  std::vector<bool> in_nx(k, false), in_ny(k, false);
  for (int i = 0; i < k; ++i) {
    in_nx[i] = g.has_edge(x, order[i]);
    in_ny[i] = g.has_edge(y, order[i]);
  }

  const long long dx = g.degree(x), dy = g.degree(y);
  std::vector<int> f(k, 0);
  f[1] = 1;
  long long best_num = std::numeric_limits<long long>::max();
  std::vector<int> best_f;

  // sx, sy accumulate sums of f over N(x) and N(y); the gradient is
  // (sx*dy - (sy - dy)*dx) / (dx*dy).
  std::function<void(int, long long, long long)> search = [&](int i,
                                                              long long sx,
                                                              long long sy) {
    if (i == k) {
      long long num = sx * dy - (sy - dy) * dx;
      if (num < best_num) {
        best_num = num;
        best_f = f;
      }
      return;
    }
    int lo = -2, hi = 2;
    for (int j = 0; j < i; ++j) {
      lo = std::max(lo, f[j] - dist[i][j]);
      hi = std::min(hi, f[j] + dist[i][j]);
    }
    for (int v = lo; v <= hi; ++v) {
      f[i] = v;
      search(i + 1, sx + (in_nx[i] ? v : 0), sy + (in_ny[i] ? v : 0));
    }
  };
  long long sx0 = (in_nx[0] ? f[0] : 0) + (in_nx[1] ? f[1] : 0);
  long long sy0 = (in_ny[0] ? f[0] : 0) + (in_ny[1] ? f[1] : 0);
  search(2, sx0, sy0);

  LipschitzWitness witness;
  for (int i = 0; i < k; ++i) witness.f[order[i]] = best_f[i];
  witness.gradient = Rational(best_num, dx * dy);
  return {witness.gradient, witness};
}

// Complementary slackness: every positive entry of an optimal coupling must
// move mass along a tight pair of the optimal Lipschitz function,
// f(v) - f(u) = d(u,v). Returns false on any violation.
inline bool slackness_check(const BlowupInstance& inst,
                            const IntegerCoupling& sigma,
                            const LipschitzWitness& witness) {
  for (size_t i = 0; i < inst.left_sites.size(); ++i) {
    for (size_t j = 0; j < inst.right_sites.size(); ++j) {
      if (sigma.flow[i][j] <= 0) continue;
      int u = inst.left_sites[i], v = inst.right_sites[j];
      if (u == inst.x && v == inst.y) continue;
      auto fu = witness.f.find(u), fv = witness.f.find(v);
      if (fu == witness.f.end() || fv == witness.f.end()) return false;
      if (fv->second - fu->second != inst.cost[i][j]) return false;
    }
  }
  return true;
}

// Signed dual certificate between the plain random-walk measures of x and y:
// positive only at (x,y), row sums -1/d_x off x, column sums -1/d_y off y,
// total zero. For an optimal coupling its weighted value equals the
// curvature.
struct StarCoupling {
  std::map<std::pair<int, int>, Rational> entries;
  Rational value;
};

inline StarCoupling star_coupling_of(const BlowupInstance& inst,
                                     const IntegerCoupling& sigma) {
  // sigma must be a coupling between mu_x and mu_y.
  if (!coupling_is_feasible(transport_instance(inst), sigma)) {
    throw std::invalid_argument(
        "star_coupling_of: sigma is not a coupling for this instance");
  }
  StarCoupling sc;
  sc.entries[{inst.x, inst.y}] = Rational(inst.dy + 1, inst.dy);
  std::vector<int> closed_common = inst.common_nbrs;
  closed_common.push_back(inst.x);
  closed_common.push_back(inst.y);
  for (int u : closed_common) {
    sc.entries[{u, u}] = Rational(-1, inst.dy);
  }
  for (size_t i = 0; i < inst.left_sites.size(); ++i) {
    for (size_t j = 0; j < inst.right_sites.size(); ++j) {
      if (sigma.flow[i][j] > 0) {
        sc.entries[{inst.left_sites[i], inst.right_sites[j]}] =
            Rational(-sigma.flow[i][j], inst.lcm);
      }
    }
  }

  // Verify the four defining conditions exactly.
  std::map<int, Rational> row_sum, col_sum;
  Rational total = 0;
  for (const auto& [uv, b] : sc.entries) {
    if (uv == std::pair<int, int>{inst.x, inst.y}) {
      if (b <= 0) throw std::logic_error("star coupling: B(x,y) must be > 0");
    } else if (b > 0) {
      throw std::logic_error("star coupling: positive off-(x,y) entry");
    }
    row_sum[uv.first] += b;
    col_sum[uv.second] += b;
    total += b;
  }
  if (total != 0) throw std::logic_error("star coupling: total sum nonzero");
  for (int u : inst.left_sites) {  // N(x); every nonzero row off x lies here
    if (row_sum[u] != Rational(-1, inst.dx)) {
      throw std::logic_error("star coupling: row sum mismatch");
    }
  }
  std::vector<int> ny = inst.common_nbrs;
  ny.push_back(inst.x);
  for (int v : inst.right_sites) ny.push_back(v);
  for (int v : ny) {  // N(y); every nonzero column off y lies here
    if (col_sum[v] != Rational(-1, inst.dy)) {
      throw std::logic_error("star coupling: column sum mismatch");
    }
  }

  sc.value = sc.entries[{inst.x, inst.y}];  // d(x,y) = 1
  for (size_t i = 0; i < inst.left_sites.size(); ++i) {
    for (size_t j = 0; j < inst.right_sites.size(); ++j) {
      if (sigma.flow[i][j] > 0) {
        sc.value += Rational(-sigma.flow[i][j], inst.lcm) * inst.cost[i][j];
      }
    }
  }
  return sc;
}

inline std::map<Edge, Rational> all_edge_curvatures(const Graph& g) {
  if (!is_connected(g)) {
    throw std::invalid_argument("curvature requires a connected graph");
  }
  std::map<Edge, Rational> out;
  for (auto [u, v] : g.edges()) {
    out[{u, v}] = edge_curvature(g, u, v).kappa;
  }
  return out;
}

// Hall-condition violator for the unit-cost blow-up graph at an edge,
// reported as base vertex sets (T1 ⊆ N(x) \ N[y], T2 ⊆ N(x) ∩ N[y]).
// Present iff the blow-up has no perfect matching.
struct HallViolator {
  std::vector<int> t1, t2;
};

inline std::optional<HallViolator> hall_violator(const Graph& g, int x,
                                                 int y) {
  auto inst = blowup_instance(g, x, y);
  auto witness =
      hall_witness_search(inst.mu_x, inst.mu_y, inst.unit_pairs);
  if (!witness) return std::nullopt;
  HallViolator hv;
  for (int i : *witness) {
    int u = inst.left_sites[i];
    bool in_closed_ny = (u == inst.y) || g.has_edge(u, inst.y);
    (in_closed_ny ? hv.t2 : hv.t1).push_back(u);
  }
  return hv;
}

}  // namespace curv
