#pragma once

#include "kroute/lp.hpp"

namespace kroute {

// ---------------------------------------------------------------------------
// Subdivided graph for the (P) metrics: every original edge e becomes r+1
// segments [e_0, e_1, ..., e_r] from its lower-numbered endpoint to the
// higher one. e_0 carries length x_e in every metric; e_i carries y^i_e in
// metric i and 0 elsewhere. Every segment inherits the original edge cost.

struct SubdividedGraph {
  int n = 0;  // original node count
  int m = 0;  // original edge count
  int r = 0;  // commodity count
  int node_count = 0;  // n + m*r
  struct Segment {
    int u, v;
    int parent;  // original edge id
    int layer;   // 0 = x-segment, i >= 1 = y^i-segment
    double cost;
    double x_len;
  };
  std::vector<Segment> segments;  // id = parent*(r+1) + layer
  const FractionalSolution* frac = nullptr;

  int segment_count() const { return static_cast<int>(segments.size()); }
  double length(int seg, int commodity) const {
    const Segment& s = segments[seg];
    if (s.layer == 0) return s.x_len;
    return s.layer == commodity + 1 ? (*frac).y[commodity][s.parent] : 0.0;
  }
};

inline SubdividedGraph subdivide(const CutInstance& inst, const FractionalSolution& frac) {
  if (frac.which != Relaxation::P)
    throw contract_error("subdivide applies to (P) solutions only; (P2)/(P3) metrics live on the original graph");
  const MultiGraph& g = inst.graph;
  int r = static_cast<int>(frac.y.size());
  if (static_cast<int>(frac.x.size()) != g.edge_count()) throw contract_error("subdivide: shape mismatch");
  SubdividedGraph sub;
  sub.n = g.node_count;
  sub.m = g.edge_count();
  sub.r = r;
  sub.node_count = sub.n + sub.m * r;
  sub.frac = &frac;
  for (int e = 0; e < sub.m; ++e) {
    const Edge& ed = g.edges[e];
    if (ed.u == ed.v) throw contract_error("subdivide: self-loops are rejected");
    int lo = std::min(ed.u, ed.v), hi = std::max(ed.u, ed.v);
    // chain lo = p_0, p_1, ..., p_r = hi with p_j = n + e*r + (j-1)
    auto chain_node = [&](int j) { return j == 0 ? lo : (j == r + 1 ? hi : sub.n + e * r + (j - 1)); };
    for (int layer = 0; layer <= r; ++layer) {
      SubdividedGraph::Segment s;
      s.u = chain_node(layer);
      s.v = chain_node(layer + 1);
      s.parent = e;
      s.layer = layer;
      s.cost = ed.cost;
      s.x_len = layer == 0 ? frac.x[e] : 0.0;
      sub.segments.push_back(s);
    }
  }
  return sub;
}

inline std::vector<int> segments_to_edges(const SubdividedGraph& sub, const std::vector<int>& segs) {
  std::vector<int> edges;
  for (int s : segs) edges.push_back(sub.segments[s].parent);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// ---------------------------------------------------------------------------
// Geometry source: one handle over the three metric families.

struct GeometrySource {
  Relaxation which = Relaxation::P;
  const CutInstance* inst = nullptr;
  const FractionalSolution* frac = nullptr;
  SubdividedGraph sub;  // populated for (P)

  int node_count() const { return which == Relaxation::P ? sub.node_count : inst->graph.node_count; }
  int commodity_count() const {
    return which == Relaxation::P ? sub.r : static_cast<int>(frac->y.size());
  }
};

inline GeometrySource make_geometry(const CutInstance& inst, const FractionalSolution& frac) {
  GeometrySource src;
  src.which = frac.which;
  src.inst = &inst;
  src.frac = &frac;
  if (frac.which == Relaxation::P) src.sub = subdivide(inst, frac);
  if (frac.which == Relaxation::Pprime)
    throw contract_error("region growing does not apply to (P'); the multiway algorithms are combinatorial");
  return src;
}

// Shortest-path distance labels from z restricted to the subgraph induced by
// S. For (P) the metric lives on the subdivided graph; for (P2)/(P3) the
// asymmetric node-entering rule applies and the start node's own length is
// excluded.
inline std::vector<double> commodity_distances(const GeometrySource& src, int commodity, int z,
                                               const std::vector<char>& S) {
  if (z < 0 || z >= src.node_count() || !S[z]) throw contract_error("commodity_distances: z must lie in S");
  if (src.which != Relaxation::P) return induced_distances(*src.inst, *src.frac, commodity, z, &S);
  const SubdividedGraph& sub = src.sub;
  std::vector<std::vector<std::pair<int, int>>> adj(sub.node_count);
  for (int s = 0; s < sub.segment_count(); ++s) {
    const auto& seg = sub.segments[s];
    if (!S[seg.u] || !S[seg.v]) continue;
    adj[seg.u].emplace_back(s, seg.v);
    adj[seg.v].emplace_back(s, seg.u);
  }
  std::vector<double> dist(sub.node_count, std::numeric_limits<double>::infinity());
  dist[z] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, z});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [s, w] : adj[v]) {
      double nd = d + sub.length(s, commodity);
      if (nd < dist[w] - 1e-15) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Ball, boundary and volumes

struct BallGeometry {
  double rho = 0.0;
  double beta = 0.0;
  std::vector<int> ball;           // nodes with distance <= rho (within S)
  std::vector<int> anti_ball;      // the paper's anti-ball for the variant
  std::vector<int> x_boundary;     // segment ids (P), edge ids (P2), node ids (P3)
  std::vector<int> y_boundary;     // segment ids (P), node ids (P2/P3)
  std::vector<int> node_boundary;  // (P3) adjacency boundary; equals x ∪ y boundary
  double volume = 0.0;       // 𝒱 (includes beta)
  double anti_volume = 0.0;  // 𝒱̄ (includes beta)
  double x_boundary_cost = 0.0;
  double vx_region = 0.0;  // 𝒱^x(S) (includes beta)
};

namespace detail {

inline BallGeometry geometry_from_distances(const GeometrySource& src, int commodity,
                                            const std::vector<double>& dist, const std::vector<char>& S,
                                            double rho, double beta) {
  BallGeometry out;
  out.rho = rho;
  out.beta = beta;
  out.volume = out.anti_volume = out.vx_region = beta;

  if (src.which == Relaxation::P) {
    const SubdividedGraph& sub = src.sub;
    std::vector<char> in_ball(sub.node_count, 0);
    for (int v = 0; v < sub.node_count; ++v)
      if (S[v] && dist[v] <= rho) {
        in_ball[v] = 1;
        out.ball.push_back(v);
      }
    for (int v = 0; v < sub.node_count; ++v)
      if (S[v] && !in_ball[v]) out.anti_ball.push_back(v);
    for (int s = 0; s < sub.segment_count(); ++s) {
      const auto& seg = sub.segments[s];
      if (!S[seg.u] || !S[seg.v]) continue;
      bool ui = in_ball[seg.u], vi = in_ball[seg.v];
      if (seg.layer == 0) out.vx_region += seg.cost * seg.x_len;
      if (ui && vi) {
        if (seg.layer == 0) out.volume += seg.cost * seg.x_len;
      } else if (!ui && !vi) {
        if (seg.layer == 0) out.anti_volume += seg.cost * seg.x_len;
      } else {
        int in = ui ? seg.u : seg.v;
        int outn = ui ? seg.v : seg.u;
        if (seg.layer == 0) {
          out.x_boundary.push_back(s);
          out.x_boundary_cost += seg.cost;
          out.volume += seg.cost * (rho - dist[in]);
          out.anti_volume += seg.cost * (dist[outn] - rho);
        } else if (seg.layer == commodity + 1) {
          out.y_boundary.push_back(s);
        }
        // other layers have zero length in this metric and cannot cross
      }
    }
    return out;
  }

  const MultiGraph& g = src.inst->graph;
  const std::vector<double>& y = src.frac->y[commodity];
  int n = g.node_count;
  std::vector<char> in_ball(n, 0), in_gy(n, 0), in_gx(n, 0);
  for (int v = 0; v < n; ++v) {
    if (!S[v]) continue;
    if (dist[v] <= rho) {
      in_ball[v] = 1;
      out.ball.push_back(v);
    }
  }

  if (src.which == Relaxation::P2) {
    for (int v = 0; v < n; ++v)
      if (S[v] && !in_ball[v] && dist[v] <= rho + y[v]) {
        in_gy[v] = 1;
        out.y_boundary.push_back(v);
      }
    const std::vector<double>& x = src.frac->x;
    std::vector<char> in_anti(n, 0);
    for (int v = 0; v < n; ++v)
      if (S[v] && !in_ball[v] && !in_gy[v]) {
        in_anti[v] = 1;
        out.anti_ball.push_back(v);
      }
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges[e];
      if (ed.u == ed.v) continue;
      if (!S[ed.u] || !S[ed.v]) continue;
      out.vx_region += ed.cost * x[e];
      auto covered = [&](int a, int b) {  // a in ball, b in ball ∪ gamma_y
        return in_ball[a] && (in_ball[b] || in_gy[b]);
      };
      if (covered(ed.u, ed.v) || covered(ed.v, ed.u)) out.volume += ed.cost * x[e];
      auto anti_covered = [&](int a, int b) { return in_anti[a] && (in_anti[b] || in_gy[b]); };
      if (anti_covered(ed.u, ed.v) || anti_covered(ed.v, ed.u)) out.anti_volume += ed.cost * x[e];
      auto crossing = [&](int a, int b) { return in_ball[a] && dist[b] - y[b] > rho; };
      if (crossing(ed.u, ed.v) || crossing(ed.v, ed.u)) {
        int in = in_ball[ed.u] ? ed.u : ed.v;
        int outn = in == ed.u ? ed.v : ed.u;
        out.x_boundary.push_back(e);
        out.x_boundary_cost += ed.cost;
        out.volume += ed.cost * (rho - dist[in]);
        out.anti_volume += ed.cost * (dist[outn] - rho - y[outn]);
      }
    }
    return out;
  }

  // (P3): node lengths and node boundaries. The node boundary is taken by
  // adjacency and then split into the y-window (dist <= rho + y) and the
  // x-window remainder; in exact arithmetic this matches the distance-window
  // definitions because a boundary node's shortest-path predecessor lies in
  // the ball.
  const std::vector<double>& x = src.frac->x;
  const std::vector<double>& nc = g.node_costs;
  std::vector<char> adj_boundary(n, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges[e];
    if (ed.u == ed.v || !S[ed.u] || !S[ed.v]) continue;
    if (in_ball[ed.u] && !in_ball[ed.v]) adj_boundary[ed.v] = 1;
    if (in_ball[ed.v] && !in_ball[ed.u]) adj_boundary[ed.u] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (!adj_boundary[v]) continue;
    out.node_boundary.push_back(v);
    if (dist[v] <= rho + y[v]) {
      in_gy[v] = 1;
      out.y_boundary.push_back(v);
    } else {
      if (dist[v] > rho + x[v] + y[v] + 1e-9)
        throw internal_error("P3 geometry: boundary node escapes the x-window");
      in_gx[v] = 1;
      out.x_boundary.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!S[v]) continue;
    if (in_ball[v] || in_gy[v]) out.volume += nc[v] * x[v];
    if (in_gx[v]) {
      out.x_boundary_cost += nc[v];
      out.volume += nc[v] * (rho - (dist[v] - x[v] - y[v]));
      out.anti_volume += nc[v] * (dist[v] - y[v] - rho);
    }
    // The anti-volume counts anti-ball mass only. Counting the y-window's
    // node mass as well (as a literal reading of the statement suggests)
    // makes the anti-volume jump upward at the Γ^x→Γ^y transitions, which
    // contradicts dV̄/dρ = -c(Γ^x) and the monotone telescoping behind the
    // radius guarantee; the x-window's decaying fractional term is the whole
    // contribution of a boundary node here.
    if (!in_ball[v] && !adj_boundary[v]) {
      out.anti_volume += nc[v] * x[v];
      out.anti_ball.push_back(v);
    }
    out.vx_region += nc[v] * x[v];
  }
  return out;
}

inline std::vector<double> geometry_breakpoints(const GeometrySource& src, int commodity,
                                                const std::vector<double>& dist, const std::vector<char>& S,
                                                double a, double b) {
  std::vector<double> pts;
  int n = src.node_count();
  const std::vector<double>* y = nullptr;
  const std::vector<double>* x = nullptr;
  if (src.which != Relaxation::P) {
    y = &src.frac->y[commodity];
    x = &src.frac->x;
  }
  for (int v = 0; v < n; ++v) {
    if (!S[v] || !std::isfinite(dist[v])) continue;
    pts.push_back(dist[v]);
    if (src.which == Relaxation::P2 || src.which == Relaxation::P3) pts.push_back(dist[v] - (*y)[v]);
    if (src.which == Relaxation::P3) pts.push_back(dist[v] - (*x)[v] - (*y)[v]);
  }
  std::vector<double> out;
  out.push_back(a);
  std::sort(pts.begin(), pts.end());
  for (double p : pts)
    if (p > a + 1e-15 && p < b - 1e-15 && (out.empty() || p > out.back() + 1e-15)) out.push_back(p);
  out.push_back(b);
  return out;
}

}  // namespace detail

inline BallGeometry ball_and_boundary(const GeometrySource& src, int commodity, int z,
                                      const std::vector<char>& S, double rho, double beta) {
  if (rho < 0.0) throw contract_error("ball_and_boundary: rho must be >= 0");
  if (beta < 0.0) throw contract_error("ball_and_boundary: beta must be >= 0");
  auto dist = commodity_distances(src, commodity, z, S);
  return detail::geometry_from_distances(src, commodity, dist, S, rho, beta);
}

// Cost of all but the q-1 most expensive elements (ties broken by element
// id); zero when fewer than q elements.
inline double cq_cost(std::vector<std::pair<double, int>> costs, int q) {
  if (q < 1) throw contract_error("cq_cost: q must be >= 1");
  if (static_cast<int>(costs.size()) < q) return 0.0;
  std::sort(costs.begin(), costs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  double sum = 0.0;
  for (size_t i = q - 1; i < costs.size(); ++i) sum += costs[i].first;
  return sum;
}

inline double cq_cost(const std::vector<double>& costs, int q) {
  std::vector<std::pair<double, int>> tagged;
  for (size_t i = 0; i < costs.size(); ++i) tagged.emplace_back(costs[i], static_cast<int>(i));
  return cq_cost(std::move(tagged), q);
}

// ---------------------------------------------------------------------------
// Deterministic radius search.
//
// Sweeps the smooth subintervals between consecutive distance breakpoints.
// Within a subinterval the boundary sets are constant, the V-side right-hand
// side is nondecreasing in rho and the V̄-side nonincreasing (v ln(eVmax/v)
// increases for v <= Vmax), so the feasible set per subinterval is an
// interval located by bisection; the midpoint of the first feasible
// subinterval is returned after re-verifying all three bounds.

struct RadiusProof {
  double rho = 0.0;
  double x_boundary_cost = 0.0;  // LHS of both volume bounds
  double v_side_rhs = 0.0;
  double vbar_side_rhs = 0.0;
  int y_boundary_count = 0;
  int q = 0;
  double volume = 0.0, anti_volume = 0.0, vx_region = 0.0;
  bool pass = false;
};

struct RadiusResult {
  double rho = 0.0;
  RadiusProof proof;
  BallGeometry geom;
};

namespace detail {

inline double lnln_term(int r) { return std::log(1.0 + std::log(r + 1.0)); }

// factor * v * ln(e*cap/v) * ll, with the v -> 0 limit handled
inline double volume_side_rhs(double factor, double v, double cap, double ll) {
  if (v <= 0.0) return 0.0;
  return factor * v * (1.0 + std::log(cap / v)) * ll;
}

}  // namespace detail

inline RadiusResult find_radius(const GeometrySource& src, int commodity, int z, const std::vector<char>& S,
                                double alpha, double beta, int total_commodities, double a = 0.0,
                                double b = 1.0) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw contract_error("find_radius: alpha must lie in (0,1)");
  if (!(a >= 0.0 && a < b)) throw contract_error("find_radius: need 0 <= a < b");
  int k = src.inst->k;
  int q = static_cast<int>(std::ceil((k - 1) / alpha));
  if (q < 1) q = 1;
  auto dist = commodity_distances(src, commodity, z, S);
  auto points = detail::geometry_breakpoints(src, commodity, dist, S, a, b);
  double factor = 2.0 / ((1.0 - alpha) * (b - a));
  double ll = detail::lnln_term(total_commodities);

  auto verify = [&](double rho) -> RadiusResult {
    BallGeometry geom = detail::geometry_from_distances(src, commodity, dist, S, rho, beta);
    RadiusResult res;
    res.rho = rho;
    res.geom = geom;
    RadiusProof& p = res.proof;
    p.rho = rho;
    p.x_boundary_cost = geom.x_boundary_cost;
    p.v_side_rhs = detail::volume_side_rhs(factor, geom.volume, geom.vx_region, ll);
    p.vbar_side_rhs = detail::volume_side_rhs(factor, geom.anti_volume, geom.vx_region, ll);
    p.y_boundary_count = static_cast<int>(geom.y_boundary.size());
    p.q = q;
    p.volume = geom.volume;
    p.anti_volume = geom.anti_volume;
    p.vx_region = geom.vx_region;
    double tol = 1e-9 * std::max(1.0, p.x_boundary_cost);
    p.pass = p.x_boundary_cost <= p.v_side_rhs + tol && p.x_boundary_cost <= p.vbar_side_rhs + tol &&
             p.y_boundary_count < q;
    return res;
  };

  for (size_t j = 0; j + 1 < points.size(); ++j) {
    double lo = points[j], hi = points[j + 1];
    if (hi - lo < 1e-14) continue;
    double mid = 0.5 * (lo + hi);
    BallGeometry g0 = detail::geometry_from_distances(src, commodity, dist, S, mid, beta);
    if (static_cast<int>(g0.y_boundary.size()) >= q) continue;
    double lhs = g0.x_boundary_cost;
    // closed-form volumes on the smooth subinterval
    auto vol_at = [&](double rho) { return g0.volume + lhs * (rho - mid); };
    auto avol_at = [&](double rho) { return g0.anti_volume - lhs * (rho - mid); };
    auto f_v = [&](double rho) {
      return detail::volume_side_rhs(factor, vol_at(rho), g0.vx_region, ll) - lhs;
    };
    auto f_vb = [&](double rho) {
      return detail::volume_side_rhs(factor, avol_at(rho), g0.vx_region, ll) - lhs;
    };
    double lo_f = lo, hi_f = hi;
    if (f_v(lo) < 0.0) {
      if (f_v(hi) < 0.0) continue;  // V-side infeasible on the whole subinterval
      double l = lo, h = hi;
      while (h - l > 1e-12) {
        double m2 = 0.5 * (l + h);
        (f_v(m2) >= 0.0 ? h : l) = m2;
      }
      lo_f = h;
    }
    if (f_vb(hi) < 0.0) {
      if (f_vb(lo) < 0.0) continue;
      double l = lo, h = hi;
      while (h - l > 1e-12) {
        double m2 = 0.5 * (l + h);
        (f_vb(m2) >= 0.0 ? l : h) = m2;
      }
      hi_f = l;
    }
    if (lo_f > hi_f) continue;
    double rho = 0.5 * (lo_f + hi_f);
    if (rho <= lo || rho >= hi) continue;  // degenerate sliver at a breakpoint
    RadiusResult res = verify(rho);
    if (res.proof.pass) return res;
  }
  throw internal_error(
      "find_radius: no feasible radius found; the region-growing guarantee promises positive measure, so "
      "this indicates an arithmetic failure (escalate to the exact-rational LP path)");
}

// ---------------------------------------------------------------------------
// Diagnostic: exact evaluation of the region-growing expectations via the
// telescoping closed form, checked against the stated right-hand sides.

struct IntegralCheckReport {
  double lhs_ball = 0.0, rhs_ball = 0.0;
  double lhs_anti = 0.0, rhs_anti = 0.0;
  bool pass = false;
};

inline IntegralCheckReport region_growing_integral_check(const GeometrySource& src, int commodity, int z,
                                                         const std::vector<char>& S, double beta, double a = 0.0,
                                                         double b = 1.0) {
  if (!(beta > 0.0)) throw contract_error("integral check requires beta > 0");
  auto dist = commodity_distances(src, commodity, z, S);
  auto points = detail::geometry_breakpoints(src, commodity, dist, S, a, b);
  BallGeometry at_a = detail::geometry_from_distances(src, commodity, dist, S, a, beta);
  BallGeometry at_b = detail::geometry_from_distances(src, commodity, dist, S, b, beta);
  double vb = at_b.volume, va = at_a.volume;
  double avb = at_b.anti_volume, ava = at_a.anti_volume;
  auto lnln = [](double ratio) { return std::log(1.0 + std::log(ratio)); };

  IntegralCheckReport rep;
  rep.rhs_ball = lnln(std::max(1.0, vb / va)) / (b - a);
  rep.rhs_anti = lnln(std::max(1.0, ava / avb)) / (b - a);
  double sum_ball = 0.0, sum_anti = 0.0;
  for (size_t j = 0; j + 1 < points.size(); ++j) {
    double lo = points[j], hi = points[j + 1];
    if (hi - lo < 1e-15) continue;
    double mid = 0.5 * (lo + hi);
    BallGeometry g0 = detail::geometry_from_distances(src, commodity, dist, S, mid, beta);
    double c = g0.x_boundary_cost;
    if (c <= 0.0) continue;
    double v_lo = g0.volume + c * (lo - mid), v_hi = g0.volume + c * (hi - mid);
    double av_lo = g0.anti_volume - c * (lo - mid), av_hi = g0.anti_volume - c * (hi - mid);
    // ∫ c dρ / (V ln(eV(b)/V)) = lnln(eV(b)/V(lo)) - lnln(eV(b)/V(hi-))
    sum_ball += lnln(vb / v_lo) - lnln(vb / v_hi);
    // ∫ c dρ / (V̄ ln(eV̄(a)/V̄)) = lnln(eV̄(a)/V̄(hi-)) - lnln(eV̄(a)/V̄(lo))
    sum_anti += lnln(ava / av_hi) - lnln(ava / av_lo);
  }
  rep.lhs_ball = sum_ball / (b - a);
  rep.lhs_anti = sum_anti / (b - a);
  double tol1 = 1e-9 * std::max(1.0, std::fabs(rep.rhs_ball));
  double tol2 = 1e-9 * std::max(1.0, std::fabs(rep.rhs_anti));
  rep.pass = rep.lhs_ball <= rep.rhs_ball + tol1 && rep.lhs_anti <= rep.rhs_anti + tol2;
  return rep;
}

}  // namespace kroute
