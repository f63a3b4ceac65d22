#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curv {

// Balanced integer transportation problem between supply and demand sites.
// Costs are arbitrary nonnegative integers; the triangle inequality is the
// caller's concern.
struct TransportInstance {
  std::vector<long long> supply;
  std::vector<long long> demand;
  std::vector<std::vector<long long>> cost;  // supply.size() x demand.size()
};

// Nonnegative integer flow matrix with row sums = supplies and column sums
// = demands, plus its total cost.
struct IntegerCoupling {
  std::vector<std::vector<long long>> flow;
  long long cost = 0;
};

namespace detail {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

struct FlowNetwork {
  struct Arc {
    int to;
    long long cap;
    long long cost;
    int rev;
  };
  std::vector<std::vector<Arc>> arcs;

  explicit FlowNetwork(int n) : arcs(n) {}

  void add(int u, int v, long long cap, long long cost) {
    arcs[u].push_back({v, cap, cost, static_cast<int>(arcs[v].size())});
    arcs[v].push_back({u, 0, -cost, static_cast<int>(arcs[u].size()) - 1});
  }
};

inline void validate_instance(const TransportInstance& inst) {
  const size_t nl = inst.supply.size(), nr = inst.demand.size();
  if (inst.cost.size() != nl) {
    throw std::invalid_argument("cost matrix has wrong row count");
  }
  long long total_supply = 0, total_demand = 0;
  for (long long s : inst.supply) {
    if (s < 0) throw std::invalid_argument("negative supply");
    total_supply += s;
  }
  for (long long d : inst.demand) {
    if (d < 0) throw std::invalid_argument("negative demand");
    total_demand += d;
  }
  for (const auto& row : inst.cost) {
    if (row.size() != nr) {
      throw std::invalid_argument("cost matrix has wrong column count");
    }
    for (long long c : row) {
      if (c < 0) throw std::invalid_argument("negative cost");
    }
  }
  if (total_supply != total_demand) {
    throw std::invalid_argument("unbalanced transport instance");
  }
}

}  // namespace detail

// Minimum-cost coupling via successive shortest paths with potentials
// (integer Dijkstra). All arc data stays integral, so the returned flow is
// integral by construction. Deterministic: ties in the priority queue break
// on the lower node index and arcs are scanned in insertion order.
inline IntegerCoupling min_cost_transport(const TransportInstance& inst) {
  detail::validate_instance(inst);
  const int nl = static_cast<int>(inst.supply.size());
  const int nr = static_cast<int>(inst.demand.size());
  IntegerCoupling result;
  result.flow.assign(nl, std::vector<long long>(nr, 0));

  long long total = 0;
  for (long long s : inst.supply) total += s;
  if (total == 0) return result;

  const int source = nl + nr, sink = nl + nr + 1, n = nl + nr + 2;
  detail::FlowNetwork net(n);
  for (int i = 0; i < nl; ++i) net.add(source, i, inst.supply[i], 0);
  for (int j = 0; j < nr; ++j) net.add(nl + j, sink, inst.demand[j], 0);
  // Supply-to-demand arcs are uncapacitated; endpoint arcs do the limiting.
  for (int i = 0; i < nl; ++i) {
    for (int j = 0; j < nr; ++j) {
      net.add(i, nl + j, total, inst.cost[i][j]);
    }
  }

  std::vector<long long> potential(n, 0), dist(n);
  std::vector<int> prev_node(n), prev_arc(n);
  long long routed = 0;
  while (routed < total) {
    std::fill(dist.begin(), dist.end(), detail::kInf);
    dist[source] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0, source);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (size_t a = 0; a < net.arcs[u].size(); ++a) {
        const auto& arc = net.arcs[u][a];
        if (arc.cap <= 0) continue;
        long long nd = d + arc.cost + potential[u] - potential[arc.to];
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          prev_node[arc.to] = u;
          prev_arc[arc.to] = static_cast<int>(a);
          pq.emplace(nd, arc.to);
        }
      }
    }
    if (dist[sink] >= detail::kInf) {
      throw std::logic_error("balanced instance became infeasible");
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < detail::kInf) potential[v] += dist[v];
    }
    long long push = total - routed;
    for (int v = sink; v != source; v = prev_node[v]) {
      push = std::min(push, net.arcs[prev_node[v]][prev_arc[v]].cap);
    }
    for (int v = sink; v != source; v = prev_node[v]) {
      auto& arc = net.arcs[prev_node[v]][prev_arc[v]];
      arc.cap -= push;
      net.arcs[v][arc.rev].cap += push;
    }
    routed += push;
  }

  for (int i = 0; i < nl; ++i) {
    for (const auto& arc : net.arcs[i]) {
      if (arc.to >= nl && arc.to < nl + nr && arc.cost >= 0) {
        long long f = net.arcs[arc.to][arc.rev].cap;  // reverse gained cap
        result.flow[i][arc.to - nl] = f;
        result.cost += f * arc.cost;
      }
    }
  }
  return result;
}

inline bool coupling_is_feasible(const TransportInstance& inst,
                                 const IntegerCoupling& c) {
  const size_t nl = inst.supply.size(), nr = inst.demand.size();
  if (c.flow.size() != nl) return false;
  std::vector<long long> col(nr, 0);
  long long cost = 0;
  for (size_t i = 0; i < nl; ++i) {
    if (c.flow[i].size() != nr) return false;
    long long row = 0;
    for (size_t j = 0; j < nr; ++j) {
      if (c.flow[i][j] < 0) return false;
      row += c.flow[i][j];
      col[j] += c.flow[i][j];
      cost += c.flow[i][j] * inst.cost[i][j];
    }
    if (row != inst.supply[i]) return false;
  }
  for (size_t j = 0; j < nr; ++j) {
    if (col[j] != inst.demand[j]) return false;
  }
  return cost == c.cost;
}

// Optimality certificate: a feasible coupling is optimal iff its residual
// graph (forward site arcs, backward arcs where flow is positive) has no
// negative-cost cycle. Bellman-Ford on the bipartite residual.
inline bool coupling_is_optimal(const TransportInstance& inst,
                                const IntegerCoupling& c) {
  if (!coupling_is_feasible(inst, c)) return false;
  const int nl = static_cast<int>(inst.supply.size());
  const int nr = static_cast<int>(inst.demand.size());
  const int n = nl + nr;
  struct E {
    int from, to;
    long long cost;
  };
  std::vector<E> edges;
  for (int i = 0; i < nl; ++i) {
    for (int j = 0; j < nr; ++j) {
      edges.push_back({i, nl + j, inst.cost[i][j]});
      if (c.flow[i][j] > 0) edges.push_back({nl + j, i, -inst.cost[i][j]});
    }
  }
  std::vector<long long> dist(n, 0);  // zero init detects any negative cycle
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      if (dist[e.from] + e.cost < dist[e.to]) {
        dist[e.to] = dist[e.from] + e.cost;
        changed = true;
      }
    }
    if (!changed) return true;
  }
  return false;
}

struct MatchingWitness {
  bool perfect = false;
  IntegerCoupling coupling;  // saturating unit-cost flow when perfect
};

// Does the blow-up bipartite graph (left_sizes[i] copies of left site i,
// right_sizes[j] copies of right site j, complete bipartite between copies
// joined by a unit edge) have a perfect matching? Max-flow on the capacitated
// base graph: source arcs carry the left sizes, sink arcs the right sizes,
// and the unit edges themselves are uncapacitated.
inline MatchingWitness has_perfect_matching(
    const std::vector<long long>& left_sizes,
    const std::vector<long long>& right_sizes,
    const std::vector<std::pair<int, int>>& unit_edges) {
  const int nl = static_cast<int>(left_sizes.size());
  const int nr = static_cast<int>(right_sizes.size());
  long long total_l = 0, total_r = 0;
  for (long long s : left_sizes) {
    if (s < 0) throw std::invalid_argument("negative left size");
    total_l += s;
  }
  for (long long s : right_sizes) {
    if (s < 0) throw std::invalid_argument("negative right size");
    total_r += s;
  }
  if (total_l != total_r) {
    throw std::invalid_argument("blow-up side sizes do not match");
  }
  for (auto [i, j] : unit_edges) {
    if (i < 0 || i >= nl || j < 0 || j >= nr) {
      throw std::invalid_argument("unit edge out of range");
    }
  }

  MatchingWitness out;
  out.coupling.flow.assign(nl, std::vector<long long>(nr, 0));
  if (total_l == 0) {
    out.perfect = true;
    return out;
  }

  const int source = nl + nr, sink = nl + nr + 1, n = nl + nr + 2;
  detail::FlowNetwork net(n);
  for (int i = 0; i < nl; ++i) net.add(source, i, left_sizes[i], 0);
  for (int j = 0; j < nr; ++j) net.add(nl + j, sink, right_sizes[j], 0);
  for (auto [i, j] : unit_edges) net.add(i, nl + j, total_l, 0);

  // Dinic blocking flow.
  std::vector<int> level(n), iter(n);
  auto bfs = [&]() {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[source] = 0;
    q.push(source);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& arc : net.arcs[u]) {
        if (arc.cap > 0 && level[arc.to] < 0) {
          level[arc.to] = level[u] + 1;
          q.push(arc.to);
        }
      }
    }
    return level[sink] >= 0;
  };
  std::function<long long(int, long long)> dfs = [&](int u, long long limit) {
    if (u == sink) return limit;
    for (int& a = iter[u]; a < static_cast<int>(net.arcs[u].size()); ++a) {
      auto& arc = net.arcs[u][a];
      if (arc.cap > 0 && level[arc.to] == level[u] + 1) {
        long long pushed = dfs(arc.to, std::min(limit, arc.cap));
        if (pushed > 0) {
          arc.cap -= pushed;
          net.arcs[arc.to][arc.rev].cap += pushed;
          return pushed;
        }
      }
    }
    return 0LL;
  };
  long long flow = 0;
  while (bfs()) {
    std::fill(iter.begin(), iter.end(), 0);
    while (long long pushed = dfs(source, detail::kInf)) flow += pushed;
  }

  for (int i = 0; i < nl; ++i) {
    for (const auto& arc : net.arcs[i]) {
      if (arc.to >= nl && arc.to < nl + nr) {
        long long f = net.arcs[arc.to][arc.rev].cap;
        out.coupling.flow[i][arc.to - nl] += f;
        out.coupling.cost += f;  // every matched copy-pair costs 1
      }
    }
  }
  out.perfect = (flow == total_l);
  return out;
}

// Exhaustive Hall-condition search over base left-site subsets T: the
// blow-up graph has a perfect matching iff every T satisfies
// sum(right sizes over N(T)) >= sum(left sizes over T). Returns the first
// violating subset in bitmask order, or nullopt. Test-scale only.
inline std::optional<std::vector<int>> hall_witness_search(
    const std::vector<long long>& left_sizes,
    const std::vector<long long>& right_sizes,
    const std::vector<std::pair<int, int>>& unit_edges) {
  const int nl = static_cast<int>(left_sizes.size());
  const int nr = static_cast<int>(right_sizes.size());
  if (nl > 20 || nr > 64) {
    throw std::invalid_argument(
        "hall_witness_search: instance too large for subset enumeration");
  }
  long long total_l = 0, total_r = 0;
  for (long long s : left_sizes) total_l += s;
  for (long long s : right_sizes) total_r += s;
  if (total_l != total_r) {
    throw std::invalid_argument("blow-up side sizes do not match");
  }
  std::vector<std::uint64_t> nbr(nl, 0);
  for (auto [i, j] : unit_edges) {
    if (i < 0 || i >= nl || j < 0 || j >= nr) {
      throw std::invalid_argument("unit edge out of range");
    }
    nbr[i] |= std::uint64_t{1} << j;
  }
  for (std::uint32_t mask = 1; mask < (1u << nl); ++mask) {
    long long left_sum = 0;
    std::uint64_t reach = 0;
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      int i = std::countr_zero(m);
      left_sum += left_sizes[i];
      reach |= nbr[i];
    }
    long long right_sum = 0;
    for (std::uint64_t m = reach; m != 0; m &= m - 1) {
      right_sum += right_sizes[std::countr_zero(m)];
    }
    if (right_sum < left_sum) {
      std::vector<int> witness;
      for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        witness.push_back(std::countr_zero(m));
      }
      return witness;
    }
  }
  return std::nullopt;
}

}  // namespace curv
