#pragma once

#include <cassert>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include "kroute/graph.hpp"

namespace kroute {

enum class Weighting { Unit, Capacity, Cost };

struct FlowResult {
  double value = 0.0;
  std::vector<int> cut_edges;    // original edge ids, ascending
  std::vector<char> source_side; // per node, residual-reachable from s
};

namespace detail {

// Dinic with adjacency in edge-insertion order: augmentation is
// lowest-index-first, and the returned cut is the source-side-minimal one
// (residual-reachable set from s).
template <typename Cap>
struct Dinic {
  struct Arc {
    int to;
    Cap cap;
    int orig;  // original edge id, -1 for auxiliary arcs
  };
  int n;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;
  std::vector<int> level, it;

  explicit Dinic(int n) : n(n), adj(n), level(n), it(n) {}

  void add_undirected(int u, int v, Cap cap, int orig) {
    adj[u].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, cap, orig});
    adj[v].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, cap, orig});
  }
  void add_directed(int u, int v, Cap cap, int orig) {
    adj[u].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({v, cap, orig});
    adj[v].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({u, Cap(0), orig});
  }

  static bool positive(Cap c) {
    if constexpr (std::is_floating_point_v<Cap>)
      return c > 1e-12;
    else
      return c > 0;
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    q.push(s);
    level[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int id : adj[v]) {
        const Arc& a = arcs[id];
        if (positive(a.cap) && level[a.to] == -1) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] != -1;
  }

  Cap dfs(int v, int t, Cap pushed) {
    if (v == t) return pushed;
    for (int& i = it[v]; i < static_cast<int>(adj[v].size()); ++i) {
      int id = adj[v][i];
      Arc& a = arcs[id];
      if (!positive(a.cap) || level[a.to] != level[v] + 1) continue;
      Cap got = dfs(a.to, t, std::min(pushed, a.cap));
      if (positive(got)) {
        a.cap -= got;
        arcs[id ^ 1].cap += got;
        return got;
      }
    }
    return Cap(0);
  }

  Cap run(int s, int t, Cap limit = std::numeric_limits<Cap>::max()) {
    Cap flow = 0;
    while (positive(limit - flow) && bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      while (true) {
        Cap got = dfs(s, t, limit - flow);
        if (!positive(got)) break;
        flow += got;
        if (!positive(limit - flow)) break;
      }
    }
    return flow;
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int id : adj[v]) {
        const Arc& a = arcs[id];
        if (positive(a.cap) && !seen[a.to]) {
          seen[a.to] = 1;
          stack.push_back(a.to);
        }
      }
    }
    return seen;
  }
};

inline double edge_weight(const Edge& e, Weighting w, double inf_surrogate) {
  switch (w) {
    case Weighting::Unit: return 1.0;
    case Weighting::Capacity: return static_cast<double>(e.capacity);
    case Weighting::Cost: return std::isinf(e.cost) ? inf_surrogate : e.cost;
  }
  return 0.0;
}

// Internal infinity for one flow computation: sum of finite weights plus one.
inline double inf_surrogate_for(const MultiGraph& g, Weighting w) {
  double total = 1.0;
  for (const Edge& e : g.edges) {
    double x = (w == Weighting::Unit) ? 1.0 : (w == Weighting::Capacity) ? e.capacity : e.cost;
    if (std::isfinite(x)) total += x;
  }
  return total;
}

}  // namespace detail

// Max flow between s and t with a certifying minimum cut under the chosen
// edge weighting; mask (when given) restricts to the induced subgraph.
inline FlowResult max_flow_min_cut(const MultiGraph& g, int s, int t, Weighting w = Weighting::Capacity,
                                   const std::vector<char>* mask = nullptr) {
  if (s == t) throw contract_error("max_flow_min_cut: s == t");
  if (s < 0 || s >= g.node_count || t < 0 || t >= g.node_count)
    throw contract_error("max_flow_min_cut: node id out of range");
  double surrogate = detail::inf_surrogate_for(g, w);
  detail::Dinic<double> din(g.node_count);
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges[id];
    if (e.u == e.v) continue;  // self-loops never affect s-t connectivity
    if (mask && (!(*mask)[e.u] || !(*mask)[e.v])) continue;
    din.add_undirected(e.u, e.v, detail::edge_weight(e, w, surrogate), id);
  }
  FlowResult res;
  res.value = din.run(s, t);
  res.source_side = din.reachable(s);
  double cut_weight = 0.0;
  for (int id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edges[id];
    if (e.u == e.v) continue;
    if (mask && (!(*mask)[e.u] || !(*mask)[e.v])) continue;
    if (res.source_side[e.u] != res.source_side[e.v]) {
      res.cut_edges.push_back(id);
      cut_weight += detail::edge_weight(e, w, surrogate);
    }
  }
  // max-flow = min-cut, asserted on every call
  if (std::fabs(res.value - cut_weight) > 1e-9 * std::max(1.0, std::fabs(res.value)))
    throw internal_error("flow/cut duality violated: flow=" + std::to_string(res.value) +
                         " cut=" + std::to_string(cut_weight));
  if (w != Weighting::Cost) res.value = std::round(res.value);
  return res;
}

// Max number of pairwise edge-disjoint s-t paths. Parallel edges count with
// multiplicity and a capacity-b edge counts as b parallel unit edges.
inline int edge_connectivity(const MultiGraph& g, int s, int t, const std::vector<char>* mask = nullptr) {
  if (s == t) throw contract_error("edge_connectivity: s == t");
  return static_cast<int>(max_flow_min_cut(g, s, t, Weighting::Capacity, mask).value);
}

// Max number of internally node-disjoint s-t paths via node splitting;
// a direct (s,t) edge contributes its capacity.
inline int node_connectivity(const MultiGraph& g, int s, int t, const std::vector<char>* mask = nullptr) {
  if (s == t) throw contract_error("node_connectivity: s == t");
  if (s < 0 || s >= g.node_count || t < 0 || t >= g.node_count)
    throw contract_error("node_connectivity: node id out of range");
  long long direct = 0;
  long long cap_total = 1;
  for (const Edge& e : g.edges) cap_total += e.capacity;
  detail::Dinic<long long> din(2 * g.node_count);
  auto in = [](int v) { return 2 * v; };
  auto out = [](int v) { return 2 * v + 1; };
  for (int v = 0; v < g.node_count; ++v) {
    if (mask && !(*mask)[v]) continue;
    din.add_directed(in(v), out(v), (v == s || v == t) ? cap_total : 1, -1);
  }
  for (const Edge& e : g.edges) {
    if (e.u == e.v) continue;
    if (mask && (!(*mask)[e.u] || !(*mask)[e.v])) continue;
    if ((e.u == s && e.v == t) || (e.u == t && e.v == s)) {
      direct += e.capacity;
      continue;
    }
    din.add_directed(out(e.u), in(e.v), cap_total, -1);
    din.add_directed(out(e.v), in(e.u), cap_total, -1);
  }
  long long flow = din.run(out(s), in(t));
  return static_cast<int>(direct + flow);
}

struct IsolatingCut {
  int terminal;
  std::vector<int> edges;
  double cost;
};

struct IsolatingCuts {
  std::vector<IsolatingCut> cuts;
  double total = 0.0;
};

// Minimum-weight t_i-isolating cuts against a super-sink over T \ {t_i}.
// The total is a 2-approximation of the minimum multiway cut.
inline IsolatingCuts isolating_cuts(const MultiGraph& g, const std::vector<int>& terminals, Weighting w) {
  if (terminals.size() < 2) throw contract_error("isolating_cuts: need |T| >= 2");
  IsolatingCuts out;
  double surrogate = detail::inf_surrogate_for(g, w) * (terminals.size() + 1.0);
  for (int ti : terminals) {
    detail::Dinic<double> din(g.node_count + 1);
    int sink = g.node_count;
    for (int id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edges[id];
      if (e.u == e.v) continue;
      din.add_undirected(e.u, e.v, detail::edge_weight(e, w, surrogate), id);
    }
    for (int tj : terminals)
      if (tj != ti) din.add_directed(tj, sink, surrogate * 4.0, -1);
    din.run(ti, sink);
    auto side = din.reachable(ti);
    IsolatingCut cut;
    cut.terminal = ti;
    cut.cost = 0.0;
    for (int id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edges[id];
      if (e.u == e.v) continue;
      if (side[e.u] != side[e.v]) {
        cut.edges.push_back(id);
        cut.cost += detail::edge_weight(e, w, surrogate);
      }
    }
    out.total += cut.cost;
    out.cuts.push_back(std::move(cut));
  }
  return out;
}

// Removed-edge set for all-pairs k=2: everything outside a maximum-cost
// spanning forest. Self-loops are left alone (they never create a second
// edge-disjoint path between distinct nodes).
inline std::vector<int> max_cost_spanning_forest(const MultiGraph& g) {
  std::vector<int> order;
  for (int id = 0; id < g.edge_count(); ++id)
    if (g.edges[id].u != g.edges[id].v) order.push_back(id);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double ca = g.edges[a].cost, cb = g.edges[b].cost;
    if (ca != cb) return ca > cb;
    return a < b;
  });
  std::vector<int> parent(g.node_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<int> removed;
  for (int id : order) {
    int a = find(g.edges[id].u), b = find(g.edges[id].v);
    if (a == b) {
      if (std::isinf(g.edges[id].cost))
        throw infeasible_error("infinite-cost edge closes a cycle of infinite-cost edges");
      removed.push_back(id);
    } else {
      parent[a] = b;
    }
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

}  // namespace kroute
