#pragma once

#include <array>

#include "kroute/oracle.hpp"

namespace kroute {

// ---------------------------------------------------------------------------
// SSVE -> k-MiC
//
// Node layout (dense, documented so mappings are id arithmetic):
//   u_j                      -> j                      for j in [0,|U|)
//   K(v_j) member l          -> |U| + j*N + l          for l in [0,N)
//   s, t, a, b               -> |U| + |V|*N + {0,1,2,3}
// Edge order: clique edges per v, then (u, K(v)) wiring per source edge,
// then (s,u), then the unit-cost (K(v)_l, t) edges, then the capacitated
// a/b wiring. Only the (K(v)_l, t) edges are deletable.

struct SsveArtifact {
  CutInstance instance;
  SsveInstance source;
  int N = 0;
  long long kprime = 0;  // floor(|U|(1-alpha)) = k-1-N|E|
  int s = 0, t = 0, a = 0, b = 0;
  std::vector<std::vector<int>> clique_nodes;   // v -> member node ids
  std::vector<std::vector<int>> unit_edge_ids;  // v -> (K(v)_l, t) edge ids
};

inline SsveArtifact ssve_to_kmic(const SsveInstance& src) {
  if (src.edges.empty()) throw contract_error("ssve_to_kmic: source needs at least one edge");
  if (src.alpha_num <= 0 || src.alpha_num > src.alpha_den)
    throw contract_error("ssve_to_kmic: alpha must lie in (0,1]");
  SsveArtifact art;
  art.source = src;
  int N = 2 * src.nu * src.nv + 1;
  art.N = N;
  long long E = static_cast<long long>(src.edges.size());
  // k = |U|(1-alpha) + N|E| + 1, with the |U|(1-alpha) part floored so k is
  // integral; both directions of the equivalence survive the floor.
  art.kprime = (static_cast<long long>(src.nu) * (src.alpha_den - src.alpha_num)) / src.alpha_den;

  CutInstance& inst = art.instance;
  inst.variant = Variant::SinglePair;
  MultiGraph& g = inst.graph;
  g.node_count = src.nu + src.nv * N + 4;
  auto knode = [&](int v, int l) { return src.nu + v * N + l; };
  art.s = src.nu + src.nv * N;
  art.t = art.s + 1;
  art.a = art.s + 2;
  art.b = art.s + 3;
  std::vector<long long> deg_u(src.nu, 0), deg_v(src.nv, 0);
  for (auto& [u, v] : src.edges) {
    if (u < 0 || u >= src.nu || v < 0 || v >= src.nv) throw contract_error("ssve edge endpoint out of range");
    ++deg_u[u];
    ++deg_v[v];
  }

  art.clique_nodes.resize(src.nv);
  for (int v = 0; v < src.nv; ++v) {
    for (int l = 0; l < N; ++l) art.clique_nodes[v].push_back(knode(v, l));
    for (int l1 = 0; l1 < N; ++l1)
      for (int l2 = l1 + 1; l2 < N; ++l2) g.add_edge(knode(v, l1), knode(v, l2), inf_cost);
  }
  for (auto& [u, v] : src.edges)
    for (int l = 0; l < N; ++l) g.add_edge(u, knode(v, l), inf_cost);
  for (int u = 0; u < src.nu; ++u) g.add_edge(art.s, u, inf_cost);
  art.unit_edge_ids.resize(src.nv);
  for (int v = 0; v < src.nv; ++v)
    for (int l = 0; l < N; ++l) art.unit_edge_ids[v].push_back(g.add_edge(knode(v, l), art.t, 1.0));
  g.add_edge(art.b, art.t, inf_cost, static_cast<int>(N * E));
  for (int u = 0; u < src.nu; ++u)
    if (deg_u[u] > 0) g.add_edge(art.b, u, inf_cost, static_cast<int>(N * deg_u[u]));
  g.add_edge(art.s, art.a, inf_cost, static_cast<int>(N * E));
  for (int v = 0; v < src.nv; ++v)
    if (deg_v[v] > 0)
      for (int l = 0; l < N; ++l) g.add_edge(art.a, knode(v, l), inf_cost, static_cast<int>(deg_v[v]));

  inst.k = static_cast<int>(art.kprime + N * E + 1);
  inst.commodities = {{art.s, art.t}};
  inst.validate();
  return art;
}

// neighbourhood of S in the source bipartite graph
inline std::vector<int> ssve_neighbourhood(const SsveInstance& src, const std::vector<int>& S) {
  std::vector<char> in_s(src.nu, 0), nb(src.nv, 0);
  for (int u : S) in_s.at(u) = 1;
  for (auto& [u, v] : src.edges)
    if (in_s[u]) nb[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < src.nv; ++v)
    if (nb[v]) out.push_back(v);
  return out;
}

// forward map: SSVE set S -> removal of the (v,t) blocks for v in Γ(S)
inline CutSolution ssve_forward(const SsveArtifact& art, const std::vector<int>& S) {
  long long size_lhs = static_cast<long long>(S.size()) * art.source.alpha_den;
  long long size_rhs = art.source.alpha_num * art.source.nu;
  if (size_lhs < size_rhs) throw contract_error("ssve_forward: witness violates |S| >= alpha|U|");
  CutSolution sol;
  sol.declared_threshold = art.instance.k - 1;
  for (int v : ssve_neighbourhood(art.source, S))
    for (int e : art.unit_edge_ids[v]) sol.removed.push_back(e);
  for (int e : sol.removed) sol.cost += 1.0;
  auto rep = check_feasible(art.instance, sol, art.instance.k - 1);
  if (!rep.feasible)
    throw internal_error("ssve_forward: mapped solution infeasible, flow " +
                         std::to_string(rep.connectivity[0]));
  sol.per_commodity_connectivity = rep.connectivity;
  sol.violation = rep.violation;
  return sol;
}

// backward map: a feasible unit-edge solution -> an SSVE set, via the proof's
// structuring exchange and a min cut in the residual digraph after routing
// N|E| units along the s-a-x-u-b-t paths.
inline std::vector<int> ssve_backward(const SsveArtifact& art, const std::vector<int>& removed_edges) {
  const CutInstance& inst = art.instance;
  const MultiGraph& g = inst.graph;
  for (int e : removed_edges)
    if (std::isinf(g.edges[e].cost)) throw contract_error("ssve_backward: witness removes an undeletable edge");
  CutSolution input;
  input.removed = removed_edges;
  auto rep0 = check_feasible(inst, input, inst.k - 1);
  if (!rep0.feasible)
    throw contract_error("ssve_backward: witness infeasible, flow " + std::to_string(rep0.connectivity[0]));

  // structuring: per clique, round the removed block to all-or-nothing
  std::vector<char> removed(g.edge_count(), 0);
  for (int e : removed_edges) removed[e] = 1;
  for (int v = 0; v < art.source.nv; ++v) {
    long long kept = 0;
    for (int e : art.unit_edge_ids[v]) kept += removed[e] ? 0 : 1;
    if (kept == 0) continue;
    if (kept <= art.kprime) {
      for (int e : art.unit_edge_ids[v]) removed[e] = 1;
    } else {
      for (int e : art.unit_edge_ids[v]) removed[e] = 0;
    }
    CutSolution step;
    for (int e = 0; e < g.edge_count(); ++e)
      if (removed[e]) step.removed.push_back(e);
    if (!check_feasible(inst, step, inst.k - 1).feasible)
      throw internal_error("ssve_backward: structuring exchange broke feasibility at clique " +
                           std::to_string(v));
  }
  long long structured_size = 0;
  for (int v = 0; v < art.source.nv; ++v) {
    long long cnt = 0;
    for (int e : art.unit_edge_ids[v]) cnt += removed[e];
    if (cnt != 0 && cnt != art.N) throw internal_error("ssve_backward: clique block not rounded to {0,N}");
    structured_size += cnt;
  }
  long long ceil_blocks = (static_cast<long long>(removed_edges.size()) + art.N - 1) / art.N;
  if (structured_size > ceil_blocks * art.N)
    throw internal_error("ssve_backward: structured solution exceeds ceil(|F|/N)*N");

  // residual digraph after the canonical N|E| units of flow
  int n = g.node_count;
  detail::Dinic<long long> din(n);
  std::map<std::pair<int, int>, long long> cap;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (removed[e]) continue;
    const Edge& ed = g.edges[e];
    cap[{ed.u, ed.v}] += ed.capacity;
    cap[{ed.v, ed.u}] += ed.capacity;
  }
  auto route = [&](int x, int y) {
    auto it = cap.find({x, y});
    if (it == cap.end() || it->second <= 0) throw internal_error("ssve_backward: routing path missing capacity");
    it->second -= 1;
    cap[{y, x}] += 1;
  };
  for (auto& [u, v] : art.source.edges)
    for (int x : art.clique_nodes[v]) {
      route(art.s, art.a);
      route(art.a, x);
      route(x, u);
      route(u, art.b);
      route(art.b, art.t);
    }
  for (auto& [key, c] : cap)
    if (c > 0) din.add_directed(key.first, key.second, c, -1);
  long long resid_flow = din.run(art.s, art.t);
  if (resid_flow > art.kprime)
    throw internal_error("ssve_backward: residual flow " + std::to_string(resid_flow) + " exceeds k' = " +
                         std::to_string(art.kprime));
  auto side = din.reachable(art.s);
  std::vector<int> S;
  for (int u = 0; u < art.source.nu; ++u)
    if (side[u]) S.push_back(u);
  long long lhs = static_cast<long long>(S.size()) * art.source.alpha_den;
  if (lhs < art.source.alpha_num * art.source.nu)
    throw internal_error("ssve_backward: extracted set misses the alpha floor");
  long long gamma_sz = static_cast<long long>(ssve_neighbourhood(art.source, S).size());
  if (gamma_sz * art.N > ceil_blocks * art.N)
    throw internal_error("ssve_backward: |Γ(S)| exceeds the removed block count");
  return S;
}

// ---------------------------------------------------------------------------
// MinRep -> ED-kNMC
//
// Per vertex-label we add a unit-cost edge (a^u, ā^u); per constraint edge e
// a gadget on fresh nodes: one cycle through s_e per nonempty label class
// L^e_b, ordered [s_e, labels of L^e_b, midpoint m_eb, b^w, b̄^w, s_e], with
// every non-label link split once and m_eb tied to t_e. Length-2 paths to the
// gadget's outside neighbours and padding paths bring every pair to k.

struct MinRepArtifact {
  CutInstance instance;
  MinRepInstance source;
  std::vector<int> label_edge_u;  // u*l1+a -> edge id
  std::vector<int> label_edge_w;  // w*l2+b -> edge id
  std::vector<int> k_e;           // per constraint edge
};

inline MinRepArtifact minrep_to_edknmc(const MinRepInstance& src) {
  if (src.edges.empty()) throw contract_error("minrep_to_edknmc: source needs at least one edge");
  MinRepArtifact art;
  art.source = src;
  CutInstance& inst = art.instance;
  inst.variant = Variant::EdgeNodeMulticut;
  MultiGraph& g = inst.graph;

  auto new_node = [&]() { return g.node_count++; };
  art.label_edge_u.assign(src.nu * src.l1, -1);
  art.label_edge_w.assign(src.nw * src.l2, -1);
  std::vector<std::pair<int, int>> unode(src.nu * src.l1), wnode(src.nw * src.l2);
  for (int u = 0; u < src.nu; ++u)
    for (int a = 0; a < src.l1; ++a) {
      int x = new_node(), y = new_node();
      unode[u * src.l1 + a] = {x, y};
      art.label_edge_u[u * src.l1 + a] = g.add_edge(x, y, 1.0);
    }
  for (int w = 0; w < src.nw; ++w)
    for (int b = 0; b < src.l2; ++b) {
      int x = new_node(), y = new_node();
      wnode[w * src.l2 + b] = {x, y};
      art.label_edge_w[w * src.l2 + b] = g.add_edge(x, y, 1.0);
    }

  auto split_link = [&](int x, int y) {  // x - c - y with infinite costs
    int c = new_node();
    g.add_edge(x, c, inf_cost);
    g.add_edge(c, y, inf_cost);
  };

  int m_edges = static_cast<int>(src.edges.size());
  std::vector<int> se(m_edges), te(m_edges);
  std::vector<std::vector<int>> gadget_nodes(m_edges);
  for (int ei = 0; ei < m_edges; ++ei) {
    const auto& e = src.edges[ei];
    if (static_cast<int>(e.pi.size()) != src.l1) throw contract_error("minrep: pi must be total on L1");
    int node_mark = g.node_count;
    se[ei] = new_node();
    te[ei] = new_node();
    int classes = 0;
    for (int b = 0; b < src.l2; ++b) {
      std::vector<int> cls;
      for (int a = 0; a < src.l1; ++a)
        if (e.pi[a] == b) cls.push_back(a);
      if (cls.empty()) continue;
      ++classes;
      int m_eb = new_node();
      // left arc: s_e through every label edge of the class, then into m_eb
      int prev = se[ei];
      for (int a : cls) {
        auto [x, y] = unode[e.u * src.l1 + a];
        split_link(prev, x);
        prev = y;
      }
      split_link(prev, m_eb);
      // right arc: m_eb through the b-label edge back to s_e
      auto [bx, by] = wnode[e.w * src.l2 + b];
      split_link(m_eb, bx);
      split_link(by, se[ei]);
      g.add_edge(m_eb, te[ei], inf_cost);
      // label endpoints participate in this gadget
      for (int a : cls) {
        gadget_nodes[ei].push_back(unode[e.u * src.l1 + a].first);
        gadget_nodes[ei].push_back(unode[e.u * src.l1 + a].second);
      }
      gadget_nodes[ei].push_back(bx);
      gadget_nodes[ei].push_back(by);
    }
    for (int v = node_mark; v < g.node_count; ++v) gadget_nodes[ei].push_back(v);
    art.k_e.push_back(classes);  // |Γ| added below
  }

  // Outside neighbours of each gadget in the union of gadget subgraphs,
  // closed under the terminals of vertex-sharing gadgets. The closure is
  // what makes the containment argument work: once the length-2 middles are
  // consumed, nothing connects a gadget's interior to the rest of the graph.
  // Without s_{e'}/t_{e'} in the set, the sibling gadget's own wiring lands
  // inside this gadget and opens detours that keep a covered pair at
  // connectivity k.
  std::vector<std::vector<int>> adj(g.node_count);
  for (const Edge& ed : g.edges) {
    adj[ed.u].push_back(ed.v);
    adj[ed.v].push_back(ed.u);
  }
  std::vector<std::vector<int>> gamma(m_edges);
  for (int ei = 0; ei < m_edges; ++ei) {
    std::vector<char> inside(g.node_count, 0);
    for (int v : gadget_nodes[ei]) inside[v] = 1;
    std::vector<char> seen(g.node_count, 0);
    for (int v : gadget_nodes[ei])
      for (int w : adj[v])
        if (!inside[w] && !seen[w]) {
          seen[w] = 1;
          gamma[ei].push_back(w);
        }
    for (int ej = 0; ej < m_edges; ++ej) {
      if (ej == ei) continue;
      bool shares = src.edges[ei].u == src.edges[ej].u || src.edges[ei].w == src.edges[ej].w;
      if (shares && !seen[se[ej]]) {
        seen[se[ej]] = seen[te[ej]] = 1;
        gamma[ei].push_back(se[ej]);
        gamma[ei].push_back(te[ej]);
      }
    }
    std::sort(gamma[ei].begin(), gamma[ei].end());
    art.k_e[ei] += static_cast<int>(gamma[ei].size());
  }
  int k = 0;
  for (int ke : art.k_e) k = std::max(k, ke);
  inst.k = k;
  for (int ei = 0; ei < m_edges; ++ei) {
    for (int v : gamma[ei]) {
      g.add_edge(se[ei], v, inf_cost);
      g.add_edge(v, te[ei], inf_cost);
    }
    for (int pad = art.k_e[ei]; pad < k; ++pad) {
      int v = new_node();
      g.add_edge(se[ei], v, inf_cost);
      g.add_edge(v, te[ei], inf_cost);
    }
    inst.commodities.emplace_back(se[ei], te[ei]);
  }
  inst.validate();
  return art;
}

// labeling -> cut (cost equal); feasibility equals coverage and is reported
// through check_feasible by callers
inline CutSolution minrep_forward(const MinRepArtifact& art, const std::vector<uint32_t>& labels_u,
                                  const std::vector<uint32_t>& labels_w) {
  const MinRepInstance& src = art.source;
  CutSolution sol;
  sol.declared_threshold = art.instance.k - 1;
  for (int u = 0; u < src.nu; ++u)
    for (int a = 0; a < src.l1; ++a)
      if (labels_u.at(u) >> a & 1) sol.removed.push_back(art.label_edge_u[u * src.l1 + a]);
  for (int w = 0; w < src.nw; ++w)
    for (int b = 0; b < src.l2; ++b)
      if (labels_w.at(w) >> b & 1) sol.removed.push_back(art.label_edge_w[w * src.l2 + b]);
  std::sort(sol.removed.begin(), sol.removed.end());
  sol.cost = static_cast<double>(sol.removed.size());
  auto rep = check_feasible(art.instance, sol, art.instance.k - 1);
  sol.per_commodity_connectivity = rep.connectivity;
  sol.violation = rep.violation;
  return sol;
}

struct MinRepLabeling {
  std::vector<uint32_t> labels_u, labels_w;
  bool covers_all = false;
  int uncovered_edge = -1;
};

// finite-cost cut -> labeling (cost equal); coverage verified
inline MinRepLabeling minrep_backward(const MinRepArtifact& art, const std::vector<int>& removed_edges) {
  const MinRepInstance& src = art.source;
  for (int e : removed_edges)
    if (std::isinf(art.instance.graph.edges[e].cost))
      throw contract_error("minrep_backward: witness removes an infinite-cost edge");
  std::vector<char> removed(art.instance.graph.edge_count(), 0);
  for (int e : removed_edges) removed[e] = 1;
  MinRepLabeling out;
  out.labels_u.assign(src.nu, 0);
  out.labels_w.assign(src.nw, 0);
  for (int u = 0; u < src.nu; ++u)
    for (int a = 0; a < src.l1; ++a)
      if (removed[art.label_edge_u[u * src.l1 + a]]) out.labels_u[u] |= 1u << a;
  for (int w = 0; w < src.nw; ++w)
    for (int b = 0; b < src.l2; ++b)
      if (removed[art.label_edge_w[w * src.l2 + b]]) out.labels_w[w] |= 1u << b;
  out.covers_all = true;
  for (size_t ei = 0; ei < src.edges.size(); ++ei) {
    const auto& e = src.edges[ei];
    bool cov = false;
    for (int a = 0; a < src.l1 && !cov; ++a)
      if ((out.labels_u[e.u] >> a & 1) && (out.labels_w[e.w] >> e.pi[a] & 1)) cov = true;
    if (!cov) {
      out.covers_all = false;
      out.uncovered_edge = static_cast<int>(ei);
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex cover -> k-route all-pairs cut (k >= 3)
//
// One path P_v per non-isolated source vertex with k-2 parallel undeletable
// links per hop and a unit link (a_v, b_v); consecutive a_v's joined by a
// triangle whose base carries k-2 parallel links; per source edge a node
// sigma_e with four unit links onto the endpoints of f_{e^u} and f_{e^w}.
// Cover of size p  <=>  all-pairs solution of cost 2|Ê| + p.

struct VcArtifact {
  CutInstance instance;
  int source_n = 0;
  std::vector<std::pair<int, int>> source_edges;
  std::vector<int> av, bv;            // -1 for isolated source vertices
  std::vector<int> path_link_of_v;    // (a_v, b_v) edge id, -1 if isolated
  std::vector<int> sigma_node;
  std::vector<std::array<int, 4>> sigma_links;  // [u1, u2, w1, w2] unit link ids
};

inline VcArtifact vc_to_allpairs(int n, const std::vector<std::pair<int, int>>& edges, int k) {
  if (k < 3) throw contract_error("vc_to_allpairs needs k >= 3; use allpairs_exact for k in {1,2}");
  if (edges.empty()) throw contract_error("vc_to_allpairs: source needs at least one edge");
  VcArtifact art;
  art.source_n = n;
  art.source_edges = edges;
  CutInstance& inst = art.instance;
  inst.variant = Variant::AllPairs;
  inst.k = k;
  MultiGraph& g = inst.graph;
  auto new_node = [&]() { return g.node_count++; };

  std::vector<std::vector<int>> incident(n);
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    auto [u, w] = edges[ei];
    if (u < 0 || u >= n || w < 0 || w >= n || u == w) throw contract_error("vc edge endpoints invalid");
    incident[u].push_back(static_cast<int>(ei));
    incident[w].push_back(static_cast<int>(ei));
  }
  art.av.assign(n, -1);
  art.bv.assign(n, -1);
  art.path_link_of_v.assign(n, -1);
  // f_{e^v} endpoints on P_v
  std::vector<std::map<int, std::pair<int, int>>> f_link(n);
  std::vector<int> ordered;  // non-isolated vertices in index order
  for (int v = 0; v < n; ++v) {
    if (incident[v].empty()) continue;  // isolated vertices never matter for a cover
    ordered.push_back(v);
    int deg = static_cast<int>(incident[v].size());
    std::vector<int> path(deg + 1);
    for (int& p : path) p = new_node();
    art.av[v] = path.front();
    art.bv[v] = path.back();
    for (int j = 0; j < deg; ++j) {
      for (int copy = 0; copy < k - 2; ++copy) g.add_edge(path[j], path[j + 1], inf_cost);
      f_link[v][incident[v][j]] = {path[j], path[j + 1]};
    }
    art.path_link_of_v[v] = g.add_edge(art.av[v], art.bv[v], 1.0);
  }
  for (size_t j = 0; j + 1 < ordered.size(); ++j) {
    int x = new_node();
    g.add_edge(art.av[ordered[j]], x, inf_cost);
    g.add_edge(x, art.av[ordered[j + 1]], inf_cost);
    for (int copy = 0; copy < k - 2; ++copy) g.add_edge(art.av[ordered[j]], art.av[ordered[j + 1]], inf_cost);
  }
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    auto [u, w] = edges[ei];
    int sg = new_node();
    art.sigma_node.push_back(sg);
    auto [u1, u2] = f_link[u][static_cast<int>(ei)];
    auto [w1, w2] = f_link[w][static_cast<int>(ei)];
    std::array<int, 4> links{};
    links[0] = g.add_edge(sg, u1, 1.0);
    links[1] = g.add_edge(sg, u2, 1.0);
    links[2] = g.add_edge(sg, w1, 1.0);
    links[3] = g.add_edge(sg, w2, 1.0);
    art.sigma_links.push_back(links);
  }
  inst.validate();
  return art;
}

inline CutSolution vc_forward(const VcArtifact& art, const std::vector<int>& cover) {
  std::vector<char> in_cover(art.source_n, 0);
  for (int v : cover) in_cover.at(v) = 1;
  CutSolution sol;
  sol.declared_threshold = art.instance.k - 1;
  for (int v : cover)
    if (art.path_link_of_v[v] >= 0) sol.removed.push_back(art.path_link_of_v[v]);
  for (size_t ei = 0; ei < art.source_edges.size(); ++ei) {
    auto [u, w] = art.source_edges[ei];
    if (!in_cover[u] && !in_cover[w])
      throw contract_error("vc_forward: witness is not a vertex cover (edge " + std::to_string(ei) + ")");
    // drop the sigma links on the side of the *other* vertex
    bool selected_u = in_cover[u];
    sol.removed.push_back(art.sigma_links[ei][selected_u ? 2 : 0]);
    sol.removed.push_back(art.sigma_links[ei][selected_u ? 3 : 1]);
  }
  std::sort(sol.removed.begin(), sol.removed.end());
  sol.cost = static_cast<double>(sol.removed.size());
  auto rep = check_feasible(art.instance, sol, art.instance.k - 1);
  if (!rep.feasible) throw internal_error("vc_forward: mapped solution infeasible");
  sol.per_commodity_connectivity = rep.connectivity;
  sol.violation = rep.violation;
  return sol;
}

// feasible all-pairs solution -> cover of size <= cost - 2|Ê|, via the
// normalization that leaves every sigma node exactly one attachment side
inline std::vector<int> vc_backward(const VcArtifact& art, const std::vector<int>& removed_edges) {
  const CutInstance& inst = art.instance;
  for (int e : removed_edges)
    if (std::isinf(inst.graph.edges[e].cost)) throw contract_error("vc_backward: witness removes an undeletable link");
  CutSolution input;
  input.removed = removed_edges;
  if (!check_feasible(inst, input, inst.k - 1).feasible)
    throw contract_error("vc_backward: witness infeasible at k-1");
  std::vector<char> removed(inst.graph.edge_count(), 0);
  for (int e : removed_edges) removed[e] = 1;

  for (size_t ei = 0; ei < art.source_edges.size(); ++ei) {
    auto [u, w] = art.source_edges[ei];
    const auto& L = art.sigma_links[ei];
    bool u_pair = removed[L[0]] && removed[L[1]];
    bool w_pair = removed[L[2]] && removed[L[3]];
    if (!u_pair && !w_pair)
      throw internal_error("vc_backward: feasible solution leaves a sigma node attached on both sides");
    if (u_pair && (removed[L[2]] || removed[L[3]])) {
      removed[L[2]] = removed[L[3]] = 0;
      if (art.path_link_of_v[w] >= 0) removed[art.path_link_of_v[w]] = 1;
    } else if (!u_pair && (removed[L[0]] || removed[L[1]])) {
      removed[L[0]] = removed[L[1]] = 0;
      if (art.path_link_of_v[u] >= 0) removed[art.path_link_of_v[u]] = 1;
    }
    CutSolution step;
    for (int e = 0; e < inst.graph.edge_count(); ++e)
      if (removed[e]) step.removed.push_back(e);
    if (!check_feasible(inst, step, inst.k - 1).feasible)
      throw internal_error("vc_backward: normalization exchange broke feasibility");
  }
  std::vector<int> cover;
  for (int v = 0; v < art.source_n; ++v)
    if (art.path_link_of_v[v] >= 0 && removed[art.path_link_of_v[v]]) cover.push_back(v);
  for (auto& [u, w] : art.source_edges) {
    bool covered = false;
    for (int c : cover) covered |= (c == u || c == w);
    if (!covered) throw internal_error("vc_backward: extracted set is not a cover");
  }
  if (static_cast<long long>(cover.size()) >
      static_cast<long long>(removed_edges.size()) - 2 * static_cast<long long>(art.source_edges.size()))
    throw internal_error("vc_backward: cover exceeds cost - 2|Ê|");
  return cover;
}

// ---------------------------------------------------------------------------
// Source-problem document formats

inline SsveInstance parse_ssve(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SsveInstance src;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header) {
      std::string alpha;
      if (tag != "ssve" || !(ls >> src.nu >> src.nv >> alpha))
        throw parse_error("line " + std::to_string(line_no) + ": expected 'ssve <|U|> <|V|> <alpha>'");
      auto slash = alpha.find('/');
      if (slash != std::string::npos) {
        src.alpha_num = std::stoll(alpha.substr(0, slash));
        src.alpha_den = std::stoll(alpha.substr(slash + 1));
      } else {
        // decimal alphas become exact rationals over a power of ten
        double a = std::stod(alpha);
        src.alpha_den = 1000000;
        src.alpha_num = static_cast<long long>(std::llround(a * src.alpha_den));
      }
      header = true;
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw parse_error("line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
      src.edges.emplace_back(u, v);
    } else {
      throw parse_error("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!header) throw parse_error("ssve document missing header");
  return src;
}

inline MinRepInstance parse_minrep(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MinRepInstance src;
  bool header = false;
  int want_m = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header) {
      if (tag != "minrep" || !(ls >> src.nu >> src.nw >> src.l1 >> src.l2 >> want_m))
        throw parse_error("line " + std::to_string(line_no) +
                          ": expected 'minrep <|U|> <|W|> <|L1|> <|L2|> <m>'");
      header = true;
    } else if (tag == "e") {
      MinRepInstance::Constraint c;
      if (!(ls >> c.u >> c.w)) throw parse_error("line " + std::to_string(line_no) + ": expected 'e <u> <w> <pi...>'");
      int img;
      while (ls >> img) c.pi.push_back(img);
      if (static_cast<int>(c.pi.size()) != src.l1)
        throw parse_error("line " + std::to_string(line_no) + ": pi must list an image for every L1 label");
      src.edges.push_back(std::move(c));
    } else {
      throw parse_error("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!header) throw parse_error("minrep document missing header");
  if (static_cast<int>(src.edges.size()) != want_m) throw parse_error("minrep header edge count mismatch");
  return src;
}

struct VcSource {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

inline VcSource parse_vc(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  VcSource src;
  bool header = false;
  int want_m = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!header) {
      if (tag != "vc" || !(ls >> src.n >> want_m))
        throw parse_error("line " + std::to_string(line_no) + ": expected 'vc <n> <m>'");
      header = true;
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw parse_error("line " + std::to_string(line_no) + ": expected 'e <u> <v>'");
      src.edges.emplace_back(u, v);
    } else {
      throw parse_error("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  if (!header) throw parse_error("vc document missing header");
  if (static_cast<int>(src.edges.size()) != want_m) throw parse_error("vc header edge count mismatch");
  return src;
}

}  // namespace kroute
