#pragma once

#include "kroute/oracle.hpp"
#include "kroute/regiongrow.hpp"

namespace kroute {

namespace detail {

inline void reject_self_loops(const CutInstance& inst, const char* who) {
  for (const Edge& e : inst.graph.edges)
    if (e.u == e.v) throw contract_error(std::string(who) + ": self-loops are rejected");
}

inline void assert_unit_edge_costs(const CutInstance& inst, const char* who) {
  for (const Edge& e : inst.graph.edges)
    if (e.cost != 1.0) throw contract_error(std::string(who) + " requires unit edge costs");
}

inline double removed_cost_edges(const CutInstance& inst, const std::vector<int>& removed) {
  double c = 0.0;
  for (int e : removed) {
    if (std::isinf(inst.graph.edges[e].cost))
      throw internal_error("algorithm attempted to delete an infinite-cost edge");
    c += inst.graph.edges[e].cost;
  }
  return c;
}

inline void finalize(const CutInstance& inst, CutSolution& sol) {
  std::sort(sol.removed.begin(), sol.removed.end());
  sol.removed.erase(std::unique(sol.removed.begin(), sol.removed.end()), sol.removed.end());
  if (sol.node_deletion) {
    sol.cost = 0.0;
    for (int v : sol.removed) {
      if (std::isinf(inst.graph.node_costs[v]))
        throw internal_error("algorithm attempted to delete an infinite-cost node");
      sol.cost += inst.graph.node_costs[v];
    }
  } else {
    sol.cost = removed_cost_edges(inst, sol.removed);
  }
  auto rep = check_feasible(inst, sol, sol.declared_threshold);
  sol.per_commodity_connectivity = rep.connectivity;
  sol.violation = rep.violation;
  if (!rep.feasible)
    throw internal_error("algorithm output infeasible at its declared threshold " +
                         std::to_string(sol.declared_threshold));
}

inline BoundCertificate make_cert(const std::string& name, double lhs, double rhs) {
  BoundCertificate c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = lhs <= rhs * (1.0 + 1e-9) + 1e-12 || lhs == 0.0;
  if (!c.pass)
    throw internal_error("certificate " + name + " violated: " + std::to_string(lhs) + " > " +
                         std::to_string(rhs));
  return c;
}

// The recursion-bound right-hand side with measured subtree depth d;
// ln(e^d r Vx/OPT) is written as d + ln(r Vx/OPT).
inline double recursion_bound_rhs(double factor, double beta, int num_pairs, double vx_u, int r, double opt,
                                  int depth) {
  if (opt <= 0.0) return std::numeric_limits<double>::infinity();
  double ln_term = depth + std::log(r * vx_u / opt);
  return factor * (beta * num_pairs + vx_u) * ln_term * lnln_term(r);
}

inline MultiGraph subdivided_multigraph(const SubdividedGraph& sub, const CutInstance& inst) {
  MultiGraph g;
  g.node_count = sub.node_count;
  for (const auto& s : sub.segments) g.add_edge(s.u, s.v, s.cost, inst.graph.edges[s.parent].capacity);
  return g;
}

// x-mass of the region (beta included): 𝒱^x(S) for any of the three sources
inline double vx_of_region(const GeometrySource& src, const std::vector<char>& S, double beta) {
  double vx = beta;
  if (src.which == Relaxation::P) {
    for (const auto& seg : src.sub.segments)
      if (S[seg.u] && S[seg.v] && seg.layer == 0) vx += seg.cost * seg.x_len;
    return vx;
  }
  const MultiGraph& g = src.inst->graph;
  if (src.which == Relaxation::P2) {
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges[e];
      if (ed.u != ed.v && S[ed.u] && S[ed.v]) vx += ed.cost * src.frac->x[e];
    }
  } else {
    for (int v = 0; v < g.node_count; ++v)
      if (S[v]) vx += g.node_costs[v] * src.frac->x[v];
  }
  return vx;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Combinatorial k-route multiway cut, unit costs: iterate isolating cuts,
// drop terminals with small cuts for free, and fall back to the full union
// once the cuts are collectively large.

inline CutSolution kmwc_unit(const CutInstance& inst, double gamma) {
  if (inst.variant != Variant::Multiway && inst.variant != Variant::AllPairs)
    throw contract_error("kmwc_unit needs a multiway instance");
  if (!(gamma > 2.0)) throw contract_error("kmwc_unit requires gamma > 2 (the condition is tight)");
  detail::reject_self_loops(inst, "kmwc_unit");
  detail::assert_unit_edge_costs(inst, "kmwc_unit");
  int kp = inst.k - 1;
  std::vector<int> terms = inst.terminals();
  CutSolution sol;
  sol.declared_threshold = static_cast<int>(std::floor(gamma * kp + 1e-9));
  while (terms.size() > 1) {
    IsolatingCuts ic = isolating_cuts(inst.graph, terms, Weighting::Unit);
    double C = ic.total;
    if (C >= gamma * kp * static_cast<double>(terms.size()) - 1e-9) {
      for (auto& cut : ic.cuts)
        for (int e : cut.edges) sol.removed.push_back(e);
      break;
    }
    size_t drop = 0;
    for (size_t i = 1; i < ic.cuts.size(); ++i)
      if (ic.cuts[i].cost < ic.cuts[drop].cost) drop = i;
    if (!(ic.cuts[drop].cost < gamma * kp))
      throw internal_error("kmwc_unit: no droppable terminal although the union threshold was not met");
    terms.erase(terms.begin() + drop);
  }
  detail::finalize(inst, sol);
  return sol;
}

// General costs: truncated-cost isolating cuts with OPT guessing by powers
// of (1+eps); per round the cheap part of the best cut is bought and its
// terminal retired.
inline CutSolution kmwc_general(const CutInstance& inst, double gamma, double eps = 0.01) {
  if (inst.variant != Variant::Multiway && inst.variant != Variant::AllPairs)
    throw contract_error("kmwc_general needs a multiway instance");
  if (!(gamma > 2.0)) throw contract_error("kmwc_general requires gamma > 2");
  if (!(eps > 0.0)) throw contract_error("kmwc_general requires eps > 0");
  detail::reject_self_loops(inst, "kmwc_general");
  int kp = inst.k - 1;
  double alpha = 2.0 / (gamma - 2.0);
  double c_min = std::numeric_limits<double>::infinity(), c_sum = 0.0;
  for (const Edge& e : inst.graph.edges)
    if (!std::isinf(e.cost)) {
      c_sum += e.cost;
      if (e.cost > 0.0) c_min = std::min(c_min, e.cost);
    }
  if (!std::isfinite(c_min)) c_min = 1.0;  // all finite costs are zero
  int threshold = std::max(0, static_cast<int>(std::floor(gamma * kp + 1e-9)));

  {  // the undeletable core must already be separable at the threshold
    CutSolution everything;
    for (int e = 0; e < inst.graph.edge_count(); ++e)
      if (!std::isinf(inst.graph.edges[e].cost)) everything.removed.push_back(e);
    if (!check_feasible(inst, everything, threshold).feasible)
      throw infeasible_error("kmwc_general: infinite-cost edges keep some terminal pair above the threshold");
  }

  auto attempt = [&](double guess) -> std::optional<std::vector<int>> {
    std::vector<int> terms = inst.terminals();
    std::vector<int> removed;
    while (terms.size() > 1) {
      int rp = static_cast<int>(terms.size());
      double lambda = kp > 0 ? alpha * guess / (kp * rp) : std::numeric_limits<double>::infinity();
      MultiGraph work;
      work.node_count = inst.graph.node_count;
      std::vector<int> work_to_orig;
      std::vector<char> gone(inst.graph.edge_count(), 0);
      for (int e : removed) gone[e] = 1;
      for (int e = 0; e < inst.graph.edge_count(); ++e) {
        if (gone[e]) continue;
        Edge ed = inst.graph.edges[e];
        ed.cost = std::min(ed.cost, lambda);
        work.edges.push_back(ed);
        work_to_orig.push_back(e);
      }
      IsolatingCuts ic = isolating_cuts(work, terms, Weighting::Cost);
      if (ic.total > 2.0 * (1.0 + alpha) * guess * (1.0 + 1e-12)) return std::nullopt;  // guess below OPT
      size_t pick = 0;
      for (size_t i = 1; i < ic.cuts.size(); ++i)
        if (ic.cuts[i].cost < ic.cuts[pick].cost) pick = i;
      for (int we : ic.cuts[pick].edges) {
        int orig = work_to_orig[we];
        double c = inst.graph.edges[orig].cost;
        if (!std::isinf(c) && c <= lambda) removed.push_back(orig);
      }
      terms.erase(terms.begin() + pick);
    }
    return removed;
  };

  for (double guess = c_min;; guess *= 1.0 + eps) {
    auto res = attempt(guess);
    if (res) {
      CutSolution sol;
      sol.removed = *res;
      sol.declared_threshold = threshold;
      detail::finalize(inst, sol);
      return sol;
    }
    if (guess > c_sum * (1.0 + eps) + 1e-9)
      throw infeasible_error("kmwc_general: no cost guess succeeds; the undeletable core is too connected");
  }
}

// ---------------------------------------------------------------------------
// Recursive region-growing rounding

namespace detail {

struct CarveConfig {
  double factor;       // 4 or 2γ/(√γ-1)²
  double alpha;        // 0.5 or γ^{-1/2}
  int violated_conn;   // pairs with >= this many disjoint paths get carved
  bool node_notion;    // node connectivity (P2/P3) vs edge connectivity (P)
  bool remove_all;     // drop the whole boundary (k-MC / ND) vs keep the priciest (c²)
};

struct RecursionState {
  const CutInstance* inst;
  const GeometrySource* src;
  const MultiGraph* work;  // subdivided graph (P) or original (P2/P3)
  std::vector<std::pair<int, int>> pairs;
  double opt, beta;
  int r_total;
  CarveConfig cfg;
  CutSolution* sol;
  std::vector<int> max_depth_guard;
};

struct SubtreeResult {
  int depth = 0;
  std::vector<int> added;  // element ids added in this subtree
};

inline bool pair_violated(const RecursionState& st, const std::vector<char>& S, int s, int t) {
  if (!S[s] || !S[t]) return false;
  if (st.cfg.node_notion) return node_connectivity(*st.work, s, t, &S) >= st.cfg.violated_conn;
  return pair_connectivity(*st.work, Variant::EdgeMulticut, s, t, &S, st.cfg.violated_conn) >=
         st.cfg.violated_conn;
}

inline SubtreeResult carve_recurse(RecursionState& st, std::vector<char> S, const std::vector<int>& my_pairs) {
  const GeometrySource& src = *st.src;
  SubtreeResult result;
  int N = static_cast<int>(my_pairs.size());
  double vx_u = vx_of_region(src, S, st.beta);

  auto violated_list = [&]() {
    std::vector<int> out;
    for (int pi : my_pairs)
      if (pair_violated(st, S, st.pairs[pi].first, st.pairs[pi].second)) out.push_back(pi);
    return out;
  };

  struct Carved {
    std::vector<char> region;  // recursion region (A, or A ∪ Γ^y for P2)
    std::vector<int> pairs;
  };
  std::vector<Carved> carved;

  std::vector<int> tprime = violated_list();
  while (!tprime.empty()) {
    int i = tprime.front();
    int z = st.pairs[i].first;
    RadiusResult rr = find_radius(src, i, z, S, st.cfg.alpha, st.beta, st.r_total);
    const BallGeometry& geom = rr.geom;

    std::vector<char> ball_mask(src.node_count(), 0);
    for (int v : geom.ball) ball_mask[v] = 1;
    std::vector<char> side_mask = ball_mask;  // membership test for the N/2 rule
    if (src.which != Relaxation::P)
      for (int v : geom.y_boundary) side_mask[v] = 1;  // B ∪ Γ^y
    int inside = 0;
    for (int pi : my_pairs)
      if (side_mask[st.pairs[pi].first] && side_mask[st.pairs[pi].second]) ++inside;
    bool take_ball = 2 * inside <= N;

    // the carved set A and the recursion region
    std::vector<char> a_mask(src.node_count(), 0);
    if (take_ball) {
      a_mask = ball_mask;
    } else {
      for (int v : geom.anti_ball) a_mask[v] = 1;
    }
    std::vector<char> region_mask = a_mask;
    if (src.which == Relaxation::P2)
      for (int v : geom.y_boundary) region_mask[v] = 1;  // stored set is A ∪ Γ^y

    // removal set for this carve
    std::vector<int> added_now;
    if (src.which == Relaxation::P) {
      std::vector<int> segs = geom.x_boundary;
      segs.insert(segs.end(), geom.y_boundary.begin(), geom.y_boundary.end());
      std::vector<int> parents = segments_to_edges(src.sub, segs);
      if (!st.cfg.remove_all && !parents.empty()) {
        size_t keep = 0;  // most expensive original edge, ties by lowest id
        for (size_t j = 1; j < parents.size(); ++j) {
          double cj = st.inst->graph.edges[parents[j]].cost, ck = st.inst->graph.edges[parents[keep]].cost;
          if (cj > ck) keep = j;
        }
        parents.erase(parents.begin() + keep);
      }
      added_now = parents;
    } else if (src.which == Relaxation::P2) {
      added_now = geom.x_boundary;  // edges of ∂^{S,x}
    } else {
      added_now = geom.node_boundary;  // all of Γ^S = Γ^{S,x} ∪ Γ^{S,y}
      auto [si, ti] = st.pairs[i];
      for (int v : added_now) {
        if (v == si || v == ti) throw internal_error("ND carve removed the commodity's own endpoint");
        if (st.inst->is_terminal(v)) st.sol->removed_foreign_terminal = true;
      }
    }

    double carve_lhs = 0.0;
    if (src.which == Relaxation::P3)
      for (int v : added_now) carve_lhs += st.inst->graph.node_costs[v];
    else
      for (int e : added_now) carve_lhs += st.inst->graph.edges[e].cost;
    double vol = take_ball ? geom.volume : geom.anti_volume;
    double carve_rhs = st.cfg.factor * ((vol <= 0.0) ? 0.0 : vol * (1.0 + std::log(geom.vx_region / vol))) *
                       lnln_term(st.r_total);
    st.sol->certificates.push_back(make_cert("carve-bound", carve_lhs, carve_rhs));

    CarveRecord rec;
    rec.commodity = i;
    rec.center = z;
    rec.rho = rr.rho;
    rec.boundary_cost = rr.proof.x_boundary_cost;
    rec.v_side_rhs = rr.proof.v_side_rhs;
    rec.vbar_side_rhs = rr.proof.vbar_side_rhs;
    rec.y_boundary_count = rr.proof.y_boundary_count;
    rec.q = rr.proof.q;
    rec.took_anti_ball = !take_ball;
    st.sol->trace.push_back(rec);

    for (int el : added_now) result.added.push_back(el);

    Carved c;
    c.region = region_mask;
    for (int pi : my_pairs)
      if (region_mask[st.pairs[pi].first] && region_mask[st.pairs[pi].second]) c.pairs.push_back(pi);
    if (static_cast<int>(c.pairs.size()) >= std::max(1, N))
      throw internal_error("carve did not reduce the commodity count");
    carved.push_back(std::move(c));

    // S shrinks by A only
    for (int v = 0; v < src.node_count(); ++v)
      if (a_mask[v]) S[v] = 0;
    tprime = violated_list();
  }

  int max_child_depth = -1;
  for (auto& c : carved) {
    SubtreeResult child;
    if (!c.pairs.empty()) child = carve_recurse(st, c.region, c.pairs);
    max_child_depth = std::max(max_child_depth, child.depth);
    result.added.insert(result.added.end(), child.added.begin(), child.added.end());
  }
  result.depth = carved.empty() ? 0 : 1 + std::max(0, max_child_depth);

  std::sort(result.added.begin(), result.added.end());
  result.added.erase(std::unique(result.added.begin(), result.added.end()), result.added.end());
  double lhs = 0.0;
  for (int el : result.added)
    lhs += src.which == Relaxation::P3 ? st.inst->graph.node_costs[el] : st.inst->graph.edges[el].cost;
  double rhs = recursion_bound_rhs(st.cfg.factor, st.beta, N, vx_u, st.r_total, st.opt, result.depth);
  st.sol->certificates.push_back(make_cert("recursion-bound", lhs, rhs));
  return result;
}

inline CutSolution run_region_growing(const CutInstance& inst, const FractionalSolution& frac,
                                      const CarveConfig& cfg, int declared_threshold) {
  reject_self_loops(inst, "region-growing rounding");
  GeometrySource src = make_geometry(inst, frac);
  MultiGraph work = src.which == Relaxation::P ? subdivided_multigraph(src.sub, inst) : inst.graph;

  RecursionState st;
  st.inst = &inst;
  st.src = &src;
  st.work = &work;
  st.pairs = inst.commodity_pairs();
  st.opt = frac.objective;
  st.beta = frac.beta;
  st.r_total = std::max(1, inst.r());
  st.cfg = cfg;
  CutSolution sol;
  sol.node_deletion = src.which == Relaxation::P3;
  sol.declared_threshold = declared_threshold;
  st.sol = &sol;

  std::vector<char> all(src.node_count(), 1);
  std::vector<int> all_pairs(st.pairs.size());
  std::iota(all_pairs.begin(), all_pairs.end(), 0);
  SubtreeResult root = carve_recurse(st, all, all_pairs);
  sol.removed = root.added;
  int depth_cap = static_cast<int>(std::ceil(std::log2(std::max(1, st.r_total)))) + 1;
  if (root.depth > depth_cap)
    throw internal_error("recursion depth " + std::to_string(root.depth) + " exceeds ceil(log2 r)+1");
  finalize(inst, sol);
  return sol;
}

}  // namespace detail

// 2-route multicut rounding: carve with alpha = 1/2 and keep the single most
// expensive boundary edge per carve (the c² rule).
inline CutSolution two_mc(const CutInstance& inst, const FractionalSolution& frac) {
  if (inst.variant != Variant::EdgeMulticut && inst.variant != Variant::SinglePair)
    throw contract_error("two_mc needs an edge-connectivity multicut instance");
  if (inst.k != 2) throw contract_error("two_mc requires k = 2");
  if (frac.which != Relaxation::P) throw contract_error("two_mc consumes a (P) solution");
  detail::CarveConfig cfg;
  cfg.factor = 4.0;
  cfg.alpha = 0.5;
  cfg.violated_conn = 2;
  cfg.node_notion = false;
  cfg.remove_all = false;
  return detail::run_region_growing(inst, frac, cfg, 1);
}

// k-route multicut with unit costs: gamma > 1, carve with alpha = gamma^{-1/2}
// and remove the whole boundary.
inline CutSolution kmc_unit(const CutInstance& inst, double gamma, const FractionalSolution& frac) {
  if (inst.variant != Variant::EdgeMulticut && inst.variant != Variant::SinglePair)
    throw contract_error("kmc_unit needs an edge-connectivity multicut instance");
  if (!(gamma > 1.0)) throw contract_error("kmc_unit requires gamma > 1");
  detail::assert_unit_edge_costs(inst, "kmc_unit");
  if (frac.which != Relaxation::P) throw contract_error("kmc_unit consumes a (P) solution");
  int up = static_cast<int>(std::ceil(gamma * (inst.k - 1) - 1e-9));
  detail::CarveConfig cfg;
  double sq = std::sqrt(gamma);
  cfg.factor = 2.0 * gamma / ((sq - 1.0) * (sq - 1.0));
  cfg.alpha = 1.0 / sq;
  cfg.violated_conn = std::max(1, up);
  cfg.node_notion = false;
  cfg.remove_all = true;
  return detail::run_region_growing(inst, frac, cfg, std::max(0, up - 1));
}

// Edge-deletion 2-route node-multicut: asymmetric metric, carve with
// alpha = 1/2; the carved region keeps the (at most one) y-boundary node.
inline CutSolution ed_two_nmc(const CutInstance& inst, const FractionalSolution& frac) {
  if (inst.variant != Variant::EdgeNodeMulticut) throw contract_error("ed_two_nmc needs the ednc variant");
  if (inst.k != 2) throw contract_error("ed_two_nmc requires k = 2");
  if (frac.which != Relaxation::P2) throw contract_error("ed_two_nmc consumes a (P2) solution");
  detail::CarveConfig cfg;
  cfg.factor = 4.0;
  cfg.alpha = 0.5;
  cfg.violated_conn = 2;
  cfg.node_notion = true;
  cfg.remove_all = true;  // all of ∂^{S,x}
  return detail::run_region_growing(inst, frac, cfg, 1);
}

// Node-deletion k-route node-multicut with unit node costs: removes the whole
// node boundary Γ^S per carve. Another commodity's terminal may lawfully end
// up in Γ^{S,y}; such outputs are flagged.
inline CutSolution nd_knmc_unit(const CutInstance& inst, double gamma, const FractionalSolution& frac) {
  if (inst.variant != Variant::NodeNodeMulticut) throw contract_error("nd_knmc_unit needs the ndnc variant");
  if (!(gamma > 1.0)) throw contract_error("nd_knmc_unit requires gamma > 1");
  for (double c : inst.graph.node_costs)
    if (c != 1.0) throw contract_error("nd_knmc_unit requires unit node costs");
  if (frac.which != Relaxation::P3) throw contract_error("nd_knmc_unit consumes a (P3) solution");
  int up = static_cast<int>(std::ceil(gamma * (inst.k - 1) - 1e-9));
  detail::CarveConfig cfg;
  double sq = std::sqrt(gamma);
  cfg.factor = 2.0 * gamma / ((sq - 1.0) * (sq - 1.0));
  cfg.alpha = 1.0 / sq;
  cfg.violated_conn = std::max(1, up);
  cfg.node_notion = true;
  cfg.remove_all = true;
  return detail::run_region_growing(inst, frac, cfg, std::max(0, up - 1));
}

// Exact all-pairs solver for k in {1,2}; APX-hard from k = 3 on.
inline CutSolution allpairs_exact(const CutInstance& inst) {
  if (inst.variant != Variant::AllPairs) throw contract_error("allpairs_exact needs the allpairs variant");
  if (inst.k >= 3)
    throw contract_error("allpairs_exact supports k in {1,2}; the problem is APX-hard for k >= 3");
  CutSolution sol;
  sol.declared_threshold = inst.k - 1;
  if (inst.k == 1) {
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
      const Edge& ed = inst.graph.edges[e];
      if (ed.u == ed.v) continue;
      if (std::isinf(ed.cost))
        throw infeasible_error("all-pairs k=1 cannot delete an infinite-cost edge");
      sol.removed.push_back(e);
    }
  } else {
    sol.removed = max_cost_spanning_forest(inst.graph);
  }
  detail::finalize(inst, sol);
  return sol;
}

}  // namespace kroute
