#pragma once

#include <atomic>
#include <map>
#include <thread>
#include <unordered_set>

#include "kroute/flow.hpp"

namespace kroute {

struct BoundCertificate {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct CarveRecord {
  int commodity = 0;
  int center = 0;
  double rho = 0.0;
  double boundary_cost = 0.0;
  double v_side_rhs = 0.0;
  double vbar_side_rhs = 0.0;
  int y_boundary_count = 0;
  int q = 0;
  bool took_anti_ball = false;
};

struct CutSolution {
  bool node_deletion = false;
  std::vector<int> removed;  // edge ids, or node ids for node-deletion
  double cost = 0.0;
  std::vector<int> per_commodity_connectivity;
  double violation = 0.0;
  int declared_threshold = 0;  // the connectivity bound the producer guarantees
  bool removed_foreign_terminal = false;  // node-deletion: another commodity's terminal was cut
  std::vector<CarveRecord> trace;
  std::vector<BoundCertificate> certificates;
};

// ---------------------------------------------------------------------------
// Feasibility checking

namespace detail {

inline MultiGraph remainder_graph(const MultiGraph& g, const std::vector<int>& removed_edges) {
  std::vector<char> gone(g.edge_count(), 0);
  for (int e : removed_edges) {
    if (e < 0 || e >= g.edge_count()) throw contract_error("solution references an edge id out of range");
    gone[e] = 1;
  }
  MultiGraph h;
  h.node_count = g.node_count;
  h.node_costs = g.node_costs;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!gone[e]) h.edges.push_back(g.edges[e]);
  return h;
}

// Connectivity of one pair in the remainder, by the variant's notion.
// node_mask (when given) marks surviving nodes for node-deletion solutions.
inline int pair_connectivity(const MultiGraph& g, Variant variant, int s, int t,
                             const std::vector<char>* node_mask, int cap = -1) {
  if (node_mask && (!(*node_mask)[s] || !(*node_mask)[t])) return 0;  // deleted endpoint
  if (variant_node_connectivity(variant)) return node_connectivity(g, s, t, node_mask);
  if (cap >= 0) {
    // capped early-exit flow for search inner loops
    if (s == t) throw contract_error("pair_connectivity: s == t");
    detail::Dinic<long long> din(g.node_count);
    for (const Edge& e : g.edges) {
      if (e.u == e.v) continue;
      if (node_mask && (!(*node_mask)[e.u] || !(*node_mask)[e.v])) continue;
      din.add_undirected(e.u, e.v, e.capacity, -1);
    }
    return static_cast<int>(din.run(s, t, static_cast<long long>(cap)));
  }
  return edge_connectivity(g, s, t, node_mask);
}

}  // namespace detail

struct FeasibilityReport {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> connectivity;
  int threshold = 0;
  bool feasible = true;
  double violation = 0.0;  // max connectivity / (k-1); +inf when k = 1 and a pair stays connected
  std::vector<std::string> forbidden;  // deletions of infinite-cost or terminal elements

  bool feasible_at(int thr) const {
    for (int c : connectivity)
      if (c > thr) return false;
    return true;
  }
};

inline FeasibilityReport check_feasible(const CutInstance& inst, const CutSolution& sol, int threshold) {
  if (threshold < 0) throw contract_error("check_feasible: threshold must be >= 0");
  FeasibilityReport rep;
  rep.threshold = threshold;
  rep.pairs = inst.commodity_pairs();
  const MultiGraph& g = inst.graph;

  MultiGraph remainder = g;
  std::vector<char> node_mask;
  if (sol.node_deletion) {
    if (!variant_node_deletion(inst.variant))
      throw contract_error("node-deletion solution on an edge-deletion instance");
    node_mask.assign(g.node_count, 1);
    for (int v : sol.removed) {
      if (v < 0 || v >= g.node_count) throw contract_error("solution references a node id out of range");
      node_mask[v] = 0;
      if (std::isinf(g.node_costs.empty() ? 0.0 : g.node_costs[v]))
        rep.forbidden.push_back("deleted infinite-cost node " + std::to_string(v));
      if (inst.is_terminal(v)) rep.forbidden.push_back("deleted terminal node " + std::to_string(v));
    }
  } else {
    for (int e : sol.removed)
      if (e >= 0 && e < g.edge_count() && std::isinf(g.edges[e].cost))
        rep.forbidden.push_back("deleted infinite-cost edge " + std::to_string(e));
    remainder = detail::remainder_graph(g, sol.removed);
  }

  for (auto& [s, t] : rep.pairs)
    rep.connectivity.push_back(
        detail::pair_connectivity(remainder, inst.variant, s, t, sol.node_deletion ? &node_mask : nullptr));
  rep.feasible = rep.feasible_at(threshold);
  for (int c : rep.connectivity) {
    if (inst.k == 1)
      rep.violation = std::max(rep.violation, c > 0 ? std::numeric_limits<double>::infinity() : 0.0);
    else
      rep.violation = std::max(rep.violation, static_cast<double>(c) / (inst.k - 1));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive optimal cut oracle

namespace detail {

struct BruteContext {
  const CutInstance* inst;
  int threshold;
  bool node_deletion;
  std::vector<int> elements;        // deletable element ids, ascending
  std::vector<double> elem_cost;    // aligned with elements
  std::vector<std::pair<int, int>> pairs;
};

// Fast feasibility: first violated pair (ascending), or -1 when feasible.
// Degree and component pruning keep the all-pairs case affordable.
inline int first_violated_pair(const BruteContext& ctx, uint32_t removed_mask) {
  const MultiGraph& g = ctx.inst->graph;
  std::vector<char> edge_gone(g.edge_count(), 0);
  std::vector<char> node_mask;
  if (ctx.node_deletion) node_mask.assign(g.node_count, 1);
  for (size_t i = 0; i < ctx.elements.size(); ++i) {
    if (!(removed_mask >> i & 1)) continue;
    if (ctx.node_deletion)
      node_mask[ctx.elements[i]] = 0;
    else
      edge_gone[ctx.elements[i]] = 1;
  }
  MultiGraph h;
  h.node_count = g.node_count;
  h.node_costs = g.node_costs;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!edge_gone[e]) h.edges.push_back(g.edges[e]);

  // union-find components + capacity degrees for pruning
  std::vector<int> parent(h.node_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<long long> cap_deg(h.node_count, 0);
  for (const Edge& e : h.edges) {
    if (e.u == e.v) continue;
    if (ctx.node_deletion && (!node_mask[e.u] || !node_mask[e.v])) continue;
    parent[find(e.u)] = find(e.v);
    cap_deg[e.u] += e.capacity;
    cap_deg[e.v] += e.capacity;
  }
  for (size_t p = 0; p < ctx.pairs.size(); ++p) {
    auto [s, t] = ctx.pairs[p];
    if (ctx.node_deletion && (!node_mask[s] || !node_mask[t])) continue;
    if (find(s) != find(t)) continue;
    // connectivity of either notion is bounded by the capacity degree
    if (std::min(cap_deg[s], cap_deg[t]) <= ctx.threshold) continue;
    int conn = pair_connectivity(h, ctx.inst->variant, s, t,
                                 ctx.node_deletion ? &node_mask : nullptr, ctx.threshold + 1);
    if (conn > ctx.threshold) return static_cast<int>(p);
  }
  return -1;
}

// Edges (or internal nodes) carrying flow in one maximum disjoint-path
// family for the violated pair; any feasible solution must delete one.
inline std::vector<int> violation_witness(const BruteContext& ctx, uint32_t removed_mask, int pair_idx) {
  const MultiGraph& g = ctx.inst->graph;
  auto [s, t] = ctx.pairs[pair_idx];
  std::vector<char> edge_gone(g.edge_count(), 0);
  std::vector<char> node_mask(g.node_count, 1);
  for (size_t i = 0; i < ctx.elements.size(); ++i) {
    if (!(removed_mask >> i & 1)) continue;
    if (ctx.node_deletion)
      node_mask[ctx.elements[i]] = 0;
    else
      edge_gone[ctx.elements[i]] = 1;
  }
  std::vector<int> out;
  if (!variant_node_connectivity(ctx.inst->variant)) {
    // max-flow support on the remainder
    detail::Dinic<long long> din(g.node_count);
    std::vector<int> arc_of_edge(g.edge_count(), -1);
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges[e];
      if (ed.u == ed.v || edge_gone[e]) continue;
      arc_of_edge[e] = static_cast<int>(din.arcs.size());
      din.add_undirected(ed.u, ed.v, ed.capacity, e);
    }
    din.run(s, t);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (arc_of_edge[e] < 0) continue;
      const Edge& ed = g.edges[e];
      long long fwd = din.arcs[arc_of_edge[e]].cap, bwd = din.arcs[arc_of_edge[e] + 1].cap;
      if (fwd != bwd && !std::isinf(ed.cost)) out.push_back(e);  // carries flow
    }
  } else {
    // node-splitting flow; witness = split arcs with flow (internal nodes),
    // or for edge-deletion node-connectivity, edges carrying flow
    long long cap_total = 1;
    for (const Edge& e : g.edges) cap_total += e.capacity;
    detail::Dinic<long long> din(2 * g.node_count);
    auto in = [](int v) { return 2 * v; };
    auto outn = [](int v) { return 2 * v + 1; };
    std::vector<int> split_arc(g.node_count, -1), edge_arc(g.edge_count(), -1);
    for (int v = 0; v < g.node_count; ++v) {
      if (!node_mask[v]) continue;
      split_arc[v] = static_cast<int>(din.arcs.size());
      din.add_directed(in(v), outn(v), (v == s || v == t) ? cap_total : 1, -1);
    }
    long long direct = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges[e];
      if (ed.u == ed.v || edge_gone[e]) continue;
      if (!node_mask[ed.u] || !node_mask[ed.v]) continue;
      if ((ed.u == s && ed.v == t) || (ed.u == t && ed.v == s)) {
        direct += ed.capacity;
        continue;
      }
      edge_arc[e] = static_cast<int>(din.arcs.size());
      din.add_directed(outn(ed.u), in(ed.v), cap_total, e);
      din.add_directed(outn(ed.v), in(ed.u), cap_total, e);
    }
    din.run(outn(s), in(t));
    if (ctx.node_deletion) {
      for (int v = 0; v < g.node_count; ++v) {
        if (split_arc[v] < 0 || v == s || v == t) continue;
        if (din.arcs[split_arc[v] + 1].cap > 0) out.push_back(v);  // flow through v
      }
    } else {
      for (int e = 0; e < g.edge_count(); ++e) {
        if (edge_arc[e] < 0 || std::isinf(g.edges[e].cost)) continue;
        const auto& a1 = din.arcs[edge_arc[e]];
        const auto& a2 = din.arcs[edge_arc[e] + 2];
        if (a1.cap != cap_total || a2.cap != cap_total) out.push_back(e);
      }
      // a direct s-t edge also certifies connectivity; it is deletable too
      for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edges[e];
        if (edge_gone[e] || std::isinf(ed.cost) || ed.u == ed.v) continue;
        if ((ed.u == s && ed.v == t) || (ed.u == t && ed.v == s)) out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

struct BruteOptions {
  int jobs = 1;
  int plain_limit = 18;  // above this, the witness branch-and-bound takes over
  int hard_limit = 22;
};

inline CutSolution brute_force_cut(const CutInstance& inst, int threshold, const BruteOptions& opts = {}) {
  if (threshold < 0) throw contract_error("brute_force_cut: threshold must be >= 0");
  detail::BruteContext ctx;
  ctx.inst = &inst;
  ctx.threshold = threshold;
  ctx.node_deletion = variant_node_deletion(inst.variant);
  ctx.pairs = inst.commodity_pairs();
  const MultiGraph& g = inst.graph;
  if (ctx.node_deletion) {
    for (int v = 0; v < g.node_count; ++v)
      if (!std::isinf(g.node_costs[v]) && !inst.is_terminal(v)) {
        ctx.elements.push_back(v);
        ctx.elem_cost.push_back(g.node_costs[v]);
      }
  } else {
    for (int e = 0; e < g.edge_count(); ++e)
      if (!std::isinf(g.edges[e].cost) && g.edges[e].u != g.edges[e].v) {
        ctx.elements.push_back(e);
        ctx.elem_cost.push_back(g.edges[e].cost);
      }
  }
  int d = static_cast<int>(ctx.elements.size());
  if (d > opts.hard_limit)
    throw size_error("brute_force_cut: " + std::to_string(d) + " deletable elements exceed the limit of " +
                     std::to_string(opts.hard_limit));
  uint32_t full = d == 32 ? 0xffffffffu : ((1u << d) - 1);
  if (detail::first_violated_pair(ctx, full) != -1)
    throw infeasible_error("no feasible solution: removing every deletable element is not enough");

  auto make_solution = [&](uint32_t mask) {
    CutSolution sol;
    sol.node_deletion = ctx.node_deletion;
    sol.declared_threshold = threshold;
    for (int i = 0; i < d; ++i)
      if (mask >> i & 1) {
        sol.removed.push_back(ctx.elements[i]);
        sol.cost += ctx.elem_cost[i];
      }
    auto rep = check_feasible(inst, sol, threshold);
    sol.per_commodity_connectivity = rep.connectivity;
    sol.violation = rep.violation;
    return sol;
  };

  auto mask_cost = [&](uint32_t mask) {
    double c = 0.0;
    for (int i = 0; i < d; ++i)
      if (mask >> i & 1) c += ctx.elem_cost[i];
    return c;
  };
  // lexicographic comparison of the sorted element-id sequences
  auto lex_less = [&](uint32_t a, uint32_t b) {
    std::vector<int> sa, sb;
    for (int i = 0; i < d; ++i) {
      if (a >> i & 1) sa.push_back(ctx.elements[i]);
      if (b >> i & 1) sb.push_back(ctx.elements[i]);
    }
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  };

  if (d <= opts.plain_limit) {
    if (opts.jobs <= 1) {
      // subsets in nondecreasing (cost, lex) order via a lazy heap over
      // cost-سorted positions; the first feasible subset is optimal
      std::vector<int> by_cost(d);
      std::iota(by_cost.begin(), by_cost.end(), 0);
      std::stable_sort(by_cost.begin(), by_cost.end(),
                       [&](int a, int b) { return ctx.elem_cost[a] < ctx.elem_cost[b]; });
      struct Node {
        double cost;
        uint32_t mask;  // over original positions
        int last;       // index into by_cost
      };
      auto node_less = [&](const Node& a, const Node& b) {
        if (a.cost != b.cost) return a.cost > b.cost;
        return !lex_less(a.mask, b.mask) && a.mask != b.mask;
      };
      std::priority_queue<Node, std::vector<Node>, decltype(node_less)> heap(node_less);
      if (detail::first_violated_pair(ctx, 0) == -1) return make_solution(0);
      if (d > 0) heap.push({ctx.elem_cost[by_cost[0]], 1u << by_cost[0], 0});
      while (!heap.empty()) {
        Node cur = heap.top();
        heap.pop();
        if (detail::first_violated_pair(ctx, cur.mask) == -1) return make_solution(cur.mask);
        if (cur.last + 1 < d) {
          int nxt = by_cost[cur.last + 1];
          heap.push({cur.cost + ctx.elem_cost[nxt], cur.mask | (1u << nxt), cur.last + 1});
          heap.push({cur.cost - ctx.elem_cost[by_cost[cur.last]] + ctx.elem_cost[nxt],
                     (cur.mask & ~(1u << by_cost[cur.last])) | (1u << nxt), cur.last + 1});
        }
      }
      throw internal_error("brute_force_cut: enumeration exhausted without a feasible subset");
    }
    // parallel exhaustive scan, merged by (cost, lex)
    int jobs = std::min(opts.jobs, 8);
    std::vector<std::pair<double, uint32_t>> best_per(jobs, {std::numeric_limits<double>::infinity(), 0});
    std::vector<std::thread> pool;
    uint64_t total = 1ull << d;
    for (int j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j]() {
        uint64_t lo = total * j / jobs, hi = total * (j + 1) / jobs;
        for (uint64_t mask = lo; mask < hi; ++mask) {
          double c = mask_cost(static_cast<uint32_t>(mask));
          if (c > best_per[j].first) continue;
          if (detail::first_violated_pair(ctx, static_cast<uint32_t>(mask)) == -1) {
            auto cand = std::make_pair(c, static_cast<uint32_t>(mask));
            if (cand.first < best_per[j].first ||
                (cand.first == best_per[j].first && lex_less(cand.second, best_per[j].second)))
              best_per[j] = cand;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    auto best = best_per[0];
    for (auto& b : best_per)
      if (b.first < best.first - 1e-12 ||
          (std::fabs(b.first - best.first) <= 1e-12 && lex_less(b.second, best.second)))
        best = b;
    return make_solution(best.second);
  }

  // Witness-hitting branch and bound: every feasible solution intersects the
  // flow support of a violated pair, so branching over that support is
  // complete for set-minimal solutions. Deterministic exploration order.
  std::vector<int> pos_of(ctx.node_deletion ? g.node_count : g.edge_count(), -1);
  for (int i = 0; i < d; ++i) pos_of[ctx.elements[i]] = i;
  double best_cost = std::numeric_limits<double>::infinity();
  uint32_t best_mask = 0;
  std::unordered_set<uint32_t> visited;
  std::function<void(uint32_t, double)> rec = [&](uint32_t mask, double cost) {
    if (cost >= best_cost - 1e-12) {
      if (!(std::fabs(cost - best_cost) <= 1e-12)) return;
    }
    if (!visited.insert(mask).second) return;
    int viol = detail::first_violated_pair(ctx, mask);
    if (viol == -1) {
      if (cost < best_cost - 1e-12 ||
          (std::fabs(cost - best_cost) <= 1e-12 && lex_less(mask, best_mask)))
        best_cost = cost, best_mask = mask;
      return;
    }
    auto witness = detail::violation_witness(ctx, mask, viol);
    for (int el : witness) {
      int p = pos_of[el];
      if (p < 0 || (mask >> p & 1)) continue;
      rec(mask | (1u << p), cost + ctx.elem_cost[p]);
    }
  };
  rec(0, 0.0);
  if (!std::isfinite(best_cost)) throw internal_error("brute_force_cut: branch and bound found no solution");
  return make_solution(best_mask);
}

// ---------------------------------------------------------------------------
// The multiway remainder procedure: repeatedly take a minimum cut between two
// still-connected terminals of the remainder graph. For any solution feasible
// at threshold k-1 this accumulates at most (k-1)(r-1) edges whose union with
// the solution is a multiway cut.

struct RemainderBound {
  std::vector<int> extra_edges;  // Ē, ids into the instance graph
  int extra_size = 0;            // capacity-weighted count
  int cuts_used = 0;
  int bound = 0;  // (k-1)(r-1)
};

inline RemainderBound remainder_multiway_bound(const CutInstance& inst, const CutSolution& sol) {
  if (inst.variant != Variant::Multiway && inst.variant != Variant::AllPairs)
    throw contract_error("remainder_multiway_bound needs a multiway instance");
  auto rep = check_feasible(inst, sol, inst.k - 1);
  if (!rep.feasible) throw contract_error("remainder_multiway_bound: solution infeasible at k-1");
  MultiGraph remainder = detail::remainder_graph(inst.graph, sol.removed);
  std::vector<int> terms = inst.terminals();
  RemainderBound out;
  out.bound = (inst.k - 1) * (static_cast<int>(terms.size()) - 1);

  std::vector<char> gone(remainder.edge_count(), 0);
  for (;;) {
    // lowest still-connected terminal pair
    MultiGraph cur;
    cur.node_count = remainder.node_count;
    std::vector<int> cur_to_rem;
    for (int e = 0; e < remainder.edge_count(); ++e)
      if (!gone[e]) {
        cur.edges.push_back(remainder.edges[e]);
        cur_to_rem.push_back(e);
      }
    int a = -1, b = -1;
    for (size_t i = 0; i < terms.size() && a < 0; ++i)
      for (size_t j = i + 1; j < terms.size(); ++j)
        if (edge_connectivity(cur, terms[i], terms[j]) > 0) {
          a = terms[i];
          b = terms[j];
          break;
        }
    if (a < 0) break;
    FlowResult cut = max_flow_min_cut(cur, a, b, Weighting::Capacity);
    if (static_cast<int>(cut.value) > inst.k - 1)
      throw internal_error("remainder pair exceeds k-1 connectivity despite a feasible solution");
    for (int ce : cut.cut_edges) {
      gone[cur_to_rem[ce]] = 1;
      out.extra_size += cur.edges[ce].capacity;
      // map back to the instance edge id: remainder keeps relative order
    }
    ++out.cuts_used;
    if (out.cuts_used > static_cast<int>(terms.size())) throw internal_error("multiway recursion did not terminate");
  }
  // recover instance edge ids for Ē
  std::vector<int> rem_to_inst;
  {
    std::vector<char> solgone(inst.graph.edge_count(), 0);
    for (int e : sol.removed) solgone[e] = 1;
    for (int e = 0; e < inst.graph.edge_count(); ++e)
      if (!solgone[e]) rem_to_inst.push_back(e);
  }
  for (int e = 0; e < remainder.edge_count(); ++e)
    if (gone[e]) out.extra_edges.push_back(rem_to_inst[e]);
  if (out.extra_size > out.bound)
    throw internal_error("multiway remainder bound violated: " + std::to_string(out.extra_size) + " > " +
                         std::to_string(out.bound));
  // certificate: solution ∪ Ē is a multiway cut
  CutSolution unioned = sol;
  unioned.removed.insert(unioned.removed.end(), out.extra_edges.begin(), out.extra_edges.end());
  auto final_rep = check_feasible(inst, unioned, 0);
  if (!final_rep.feasible) throw internal_error("solution ∪ Ē fails to be a multiway cut");
  return out;
}

// ---------------------------------------------------------------------------
// Source-problem brutes for the reductions

struct SsveInstance {
  int nu = 0, nv = 0;
  std::vector<std::pair<int, int>> edges;  // (u index, v index)
  long long alpha_num = 1, alpha_den = 1;  // alpha = num/den in (0,1]
};

struct SsveResult {
  int value = 0;  // min |Γ(S)|
  std::vector<int> witness_set;
};

inline SsveResult brute_ssve(const SsveInstance& src) {
  if (src.nu < 1 || src.nu > 12) throw size_error("brute_ssve: |U| must be in [1,12]");
  if (src.alpha_num <= 0 || src.alpha_num > src.alpha_den) throw contract_error("alpha must lie in (0,1]");
  SsveResult best;
  best.value = src.nv + 1;
  for (uint32_t mask = 1; mask < (1u << src.nu); ++mask) {
    int size = __builtin_popcount(mask);
    if (static_cast<long long>(size) * src.alpha_den < src.alpha_num * src.nu) continue;
    uint32_t nb = 0;
    for (auto& [u, v] : src.edges)
      if (mask >> u & 1) nb |= 1u << v;
    int val = __builtin_popcount(nb);
    if (val < best.value) {
      best.value = val;
      best.witness_set.clear();
      for (int u = 0; u < src.nu; ++u)
        if (mask >> u & 1) best.witness_set.push_back(u);
    }
  }
  if (best.value > src.nv) throw infeasible_error("brute_ssve: no subset meets the alpha floor");
  return best;
}

struct MinRepInstance {
  int nu = 0, nw = 0;      // sides of the constraint graph
  int l1 = 0, l2 = 0;      // label set sizes
  struct Constraint {
    int u, w;
    std::vector<int> pi;  // pi[a] in [0,l2) for each a in [0,l1)
  };
  std::vector<Constraint> edges;
};

struct MinRepResult {
  int value = 0;  // min total labels
  std::vector<uint32_t> labels_u, labels_w;  // bitmask per vertex
};

inline MinRepResult brute_minrep(const MinRepInstance& src) {
  int bits = src.nu * src.l1 + src.nw * src.l2;
  if (bits > 20) throw size_error("brute_minrep: label assignment space too large");
  for (auto& e : src.edges)
    if (static_cast<int>(e.pi.size()) != src.l1) throw contract_error("minrep: pi must be total on L1");
  MinRepResult best;
  best.value = bits + 1;
  for (uint32_t mask = 0; mask < (1u << bits); ++mask) {
    int total = __builtin_popcount(mask);
    if (total >= best.value) continue;
    auto u_bit = [&](int u, int a) { return mask >> (u * src.l1 + a) & 1; };
    auto w_bit = [&](int w, int b) { return mask >> (src.nu * src.l1 + w * src.l2 + b) & 1; };
    bool covers = true;
    for (auto& e : src.edges) {
      bool cov = false;
      for (int a = 0; a < src.l1 && !cov; ++a)
        if (u_bit(e.u, a) && w_bit(e.w, e.pi[a])) cov = true;
      if (!cov) {
        covers = false;
        break;
      }
    }
    if (covers) {
      best.value = total;
      best.labels_u.assign(src.nu, 0);
      best.labels_w.assign(src.nw, 0);
      for (int u = 0; u < src.nu; ++u)
        for (int a = 0; a < src.l1; ++a)
          if (u_bit(u, a)) best.labels_u[u] |= 1u << a;
      for (int w = 0; w < src.nw; ++w)
        for (int b = 0; b < src.l2; ++b)
          if (w_bit(w, b)) best.labels_w[w] |= 1u << b;
    }
  }
  return best;
}

struct VertexCoverResult {
  int value = 0;
  std::vector<int> cover;
};

inline VertexCoverResult brute_vertex_cover(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > 16) throw size_error("brute_vertex_cover: n must be <= 16");
  VertexCoverResult best;
  best.value = n + 1;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best.value) continue;
    bool ok = true;
    for (auto& [u, v] : edges)
      if (!(mask >> u & 1) && !(mask >> v & 1)) {
        ok = false;
        break;
      }
    if (ok) {
      best.value = size;
      best.cover.clear();
      for (int v = 0; v < n; ++v)
        if (mask >> v & 1) best.cover.push_back(v);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Exact optimum for single-pair capacitated instances whose nodes fall into
// verified interchangeable groups (the SSVE gadgets). Deleting F is feasible
// iff some s-t cut has residual capacity <= k-1, and only finite-cost
// crossing edges can be deleted, so
//   OPT = min over cuts A with W(A) <= k-1 of  c0 * max(0, cap(A) - (k-1)),
// where W counts the undeletable crossing capacity. Cut enumeration collapses
// each group to its in-count, which is exact because group members are
// mutually swappable automorphisms (checked below, not assumed).

inline double exact_singlepair_interdiction(const CutInstance& inst, const std::vector<std::vector<int>>& groups) {
  if (inst.variant != Variant::SinglePair) throw contract_error("interdiction oracle needs a singlepair instance");
  const MultiGraph& g = inst.graph;
  auto [s, t] = inst.commodities[0];
  double unit_cost = -1.0;
  for (const Edge& e : g.edges)
    if (!std::isinf(e.cost)) {
      if (e.capacity != 1) throw contract_error("interdiction oracle: finite-cost edges must have capacity 1");
      if (unit_cost < 0)
        unit_cost = e.cost;
      else if (std::fabs(unit_cost - e.cost) > 1e-12)
        throw contract_error("interdiction oracle: finite-cost edges must share one cost");
    }
  if (unit_cost < 0) unit_cost = 1.0;

  // units: groups first, then singletons for everything else
  int n = g.node_count;
  std::vector<int> unit_of(n, -1);
  std::vector<std::vector<int>> units = groups;
  for (size_t gi = 0; gi < groups.size(); ++gi)
    for (int v : groups[gi]) {
      if (v == s || v == t) throw contract_error("interdiction oracle: s/t cannot sit in a group");
      if (unit_of[v] != -1) throw contract_error("interdiction oracle: overlapping groups");
      unit_of[v] = static_cast<int>(gi);
    }
  for (int v = 0; v < n; ++v)
    if (unit_of[v] == -1) {
      unit_of[v] = static_cast<int>(units.size());
      units.push_back({v});
    }

  // verify interchangeability: swapping any two group members is an
  // automorphism (identical edge profiles toward every third node)
  std::vector<std::map<int, std::vector<std::pair<double, int>>>> nbr(n);
  for (const Edge& e : g.edges) {
    if (e.u == e.v) continue;
    std::pair<double, int> tag{std::isinf(e.cost) ? -1.0 : e.cost, e.capacity};
    nbr[e.u][e.v].push_back(tag);
    nbr[e.v][e.u].push_back(tag);
  }
  for (auto& row : nbr)
    for (auto& [w, lst] : row) std::sort(lst.begin(), lst.end());
  for (auto& grp : groups)
    for (size_t i = 0; i + 1 < grp.size(); ++i) {
      int a = grp[i], b = grp[i + 1];
      auto pa = nbr[a], pb = nbr[b];  // copies; drop the mutual entries
      pa.erase(b);
      pb.erase(a);
      if (pa != pb) throw contract_error("interdiction oracle: group members are not interchangeable");
    }

  // aggregate edges by unit pair; each class must be uniform per member pair
  struct Agg {
    long long inf_cap_per_pair = 0;  // undeletable capacity per member pair
    long long fin_per_pair = 0;      // deletable unit edges per member pair
  };
  std::map<std::pair<int, int>, std::pair<long long, long long>> raw;  // totals (inf cap, fin count)
  for (const Edge& e : g.edges) {
    if (e.u == e.v) continue;
    int a = unit_of[e.u], b = unit_of[e.v];
    auto key = std::minmax(a, b);
    auto& slot = raw[{key.first, key.second}];
    if (std::isinf(e.cost))
      slot.first += e.capacity;
    else
      slot.second += 1;
  }
  std::map<std::pair<int, int>, Agg> agg;
  for (auto& [key, totals] : raw) {
    auto [ua, ub] = key;
    long long pairs = ua == ub ? static_cast<long long>(units[ua].size()) * (units[ua].size() - 1) / 2
                               : static_cast<long long>(units[ua].size()) * units[ub].size();
    Agg a;
    if (totals.first % pairs != 0 || totals.second % pairs != 0)
      throw contract_error("interdiction oracle: non-uniform edge class between units");
    a.inf_cap_per_pair = totals.first / pairs;
    a.fin_per_pair = totals.second / pairs;
    agg[key] = a;
  }

  int nu = static_cast<int>(units.size());
  std::vector<int> sizes(nu);
  uint64_t combos = 1;
  for (int i = 0; i < nu; ++i) {
    sizes[i] = static_cast<int>(units[i].size());
    combos *= sizes[i] + 1;
    if (combos > 80'000'000ull) throw size_error("interdiction oracle: cut space too large");
  }
  int su = unit_of[s], tu = unit_of[t];
  long long K = inst.k - 1;

  std::vector<int> in_count(nu, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int)> enumerate = [&](int u) {
    if (u == nu) {
      if (in_count[su] != 1 || in_count[tu] != 0) return;
      long long W = 0, D = 0;
      for (auto& [key, a] : agg) {
        auto [ua, ub] = key;
        long long cross = ua == ub
                              ? static_cast<long long>(in_count[ua]) * (sizes[ua] - in_count[ua])
                              : static_cast<long long>(in_count[ua]) * (sizes[ub] - in_count[ub]) +
                                    static_cast<long long>(sizes[ua] - in_count[ua]) * in_count[ub];
        W += a.inf_cap_per_pair * cross;
        D += a.fin_per_pair * cross;
        if (W > K) return;  // undeletable crossing capacity already disqualifies this cut
      }
      if (W > K) return;
      long long need = W + D - K;
      double cost = need > 0 ? need * unit_cost : 0.0;
      best = std::min(best, cost);
      return;
    }
    int hi = sizes[u];
    if (u == su || u == tu) {  // s in, t out (singleton units)
      in_count[u] = u == su ? 1 : 0;
      enumerate(u + 1);
      return;
    }
    for (int c = 0; c <= hi; ++c) {
      in_count[u] = c;
      enumerate(u + 1);
    }
  };
  enumerate(0);
  if (!std::isfinite(best)) throw infeasible_error("interdiction oracle: no cut with undeletable capacity <= k-1");
  return best;
}

}  // namespace kroute
