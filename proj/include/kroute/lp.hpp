#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>

#include "kroute/flow.hpp"
#include "kroute/graph.hpp"

namespace kroute {

using rational = boost::multiprecision::cpp_rational;

enum class Relaxation { P, Pprime, P2, P3 };

inline const char* relaxation_token(Relaxation r) {
  switch (r) {
    case Relaxation::P: return "P";
    case Relaxation::Pprime: return "Pprime";
    case Relaxation::P2: return "P2";
    case Relaxation::P3: return "P3";
  }
  return "?";
}

inline std::optional<Relaxation> relaxation_from_token(const std::string& s) {
  if (s == "P") return Relaxation::P;
  if (s == "Pprime") return Relaxation::Pprime;
  if (s == "P2") return Relaxation::P2;
  if (s == "P3") return Relaxation::P3;
  return std::nullopt;
}

enum class Rel { Le, Eq, Ge };

struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;  // minimize
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    Rel rel;
    double rhs;
  };
  std::vector<Row> rows;
  std::vector<std::optional<double>> fixed;  // variable fixings (x_j = value)
  std::vector<std::string> var_names;

  int add_var(std::string name, double obj = 0.0) {
    objective.push_back(obj);
    fixed.emplace_back();
    var_names.push_back(std::move(name));
    return num_vars++;
  }
  void add_row(std::vector<std::pair<int, double>> coeffs, Rel rel, double rhs) {
    rows.push_back({std::move(coeffs), rel, rhs});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  std::vector<double> x;
  bool exact = false;  // solved by the rational fallback
};

// ---------------------------------------------------------------------------
// Two-phase dense tableau simplex with Bland's rule. Bland's rule is what
// makes solves deterministic and pivot choices depend only on signs, so
// scaling the objective cannot change the pivot sequence.

namespace detail {

template <typename T>
struct Scalar;

template <>
struct Scalar<double> {
  static constexpr double eps = 1e-9;
  static constexpr double pivot_floor = 1e-12;
  static bool neg(double x) { return x < -eps; }
  static bool pos(double x) { return x > eps; }
  static double from(double x) { return x; }
  static double to_double(double x) { return x; }
};

template <>
struct Scalar<rational> {
  static bool neg(const rational& x) { return x < 0; }
  static bool pos(const rational& x) { return x > 0; }
  static rational from(double x) { return rational(x); }
  static double to_double(const rational& x) { return static_cast<double>(x); }
};

template <typename T>
class SimplexTableau {
 public:
  LpStatus solve(const LinearProgram& lp, std::vector<double>& out_x, double& out_obj) {
    build(lp);
    if (!phase(true)) return LpStatus::Infeasible;
    drive_out_artificials();
    bool bounded = phase(false);
    if (!bounded) return LpStatus::Unbounded;
    extract(lp, out_x, out_obj);
    return LpStatus::Optimal;
  }

 private:
  int m_ = 0, width_ = 0, struct_vars_ = 0, art_begin_ = 0;
  std::vector<std::vector<T>> a_;  // m rows x width cols, last col = rhs
  std::vector<T> cost_, art_cost_;
  std::vector<int> basis_;
  std::vector<int> orig_of_;  // structural column -> lp variable index
  std::vector<T> fixed_shift_;
  T obj_const_{};

  void build(const LinearProgram& lp) {
    // substitute fixed variables into the rhs
    std::vector<int> col_of(lp.num_vars, -1);
    orig_of_.clear();
    for (int j = 0; j < lp.num_vars; ++j) {
      if (lp.fixed[j].has_value()) continue;
      col_of[j] = static_cast<int>(orig_of_.size());
      orig_of_.push_back(j);
    }
    struct_vars_ = static_cast<int>(orig_of_.size());
    m_ = static_cast<int>(lp.rows.size());

    int slacks = 0;
    for (const auto& row : lp.rows)
      if (row.rel != Rel::Eq) ++slacks;
    art_begin_ = struct_vars_ + slacks;
    width_ = art_begin_ + m_ + 1;  // one artificial per row (maybe unused) + rhs

    a_.assign(m_, std::vector<T>(width_, T(0)));
    basis_.assign(m_, -1);
    obj_const_ = T(0);
    for (int j = 0; j < lp.num_vars; ++j)
      if (lp.fixed[j].has_value()) obj_const_ += Scalar<T>::from(lp.objective[j]) * Scalar<T>::from(*lp.fixed[j]);

    int slack_at = struct_vars_;
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      T rhs = Scalar<T>::from(row.rhs);
      for (auto& [j, c] : row.coeffs) {
        T cc = Scalar<T>::from(c);
        if (lp.fixed[j].has_value())
          rhs -= cc * Scalar<T>::from(*lp.fixed[j]);
        else
          a_[i][col_of[j]] += cc;
      }
      Rel rel = row.rel;
      if (rel == Rel::Le) {
        a_[i][slack_at] = T(1);
        ++slack_at;
      } else if (rel == Rel::Ge) {
        a_[i][slack_at] = T(-1);
        ++slack_at;
      }
      a_[i][width_ - 1] = rhs;
      // normalize to rhs >= 0
      if (a_[i][width_ - 1] < T(0)) {
        for (int j = 0; j < width_; ++j) a_[i][j] = -a_[i][j];
      }
      // basis: slack if it has coefficient +1 after normalization, else artificial
      int sc = slack_at - 1;
      if (rel != Rel::Eq && a_[i][sc] == T(1)) {
        basis_[i] = sc;
      } else {
        a_[i][art_begin_ + i] = T(1);
        basis_[i] = art_begin_ + i;
      }
    }

    cost_.assign(width_ - 1, T(0));
    for (int c = 0; c < struct_vars_; ++c) cost_[c] = Scalar<T>::from(lp.objective[orig_of_[c]]);
    art_cost_.assign(width_ - 1, T(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= art_begin_) art_cost_[basis_[i]] = T(1);
  }

  // reduced cost of column j under cost vector c: c_j - sum_i c_{basis_i} a_ij
  T reduced(const std::vector<T>& c, int j) const {
    T r = c[j];
    for (int i = 0; i < m_; ++i)
      if (c[basis_[i]] != T(0)) r -= c[basis_[i]] * a_[i][j];
    return r;
  }

  void pivot(int row, int col) {
    T inv = a_[row][col];
    if constexpr (std::is_same_v<T, double>) {
      if (std::fabs(inv) < Scalar<double>::pivot_floor)
        throw solver_error("simplex pivot below 1e-12; use the exact-rational fallback");
    }
    for (int j = 0; j < width_; ++j) a_[row][j] /= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      T f = a_[i][col];
      if (f == T(0)) continue;
      for (int j = 0; j < width_; ++j) a_[i][j] -= f * a_[row][j];
    }
    basis_[row] = col;
  }

  // Bland: entering = lowest-index column with negative reduced cost;
  // leaving = min ratio, ties by lowest basis variable index.
  bool phase(bool phase1) {
    const std::vector<T>& c = phase1 ? art_cost_ : cost_;
    // artificial columns never enter the basis in either phase
    int limit = art_begin_;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (is_basic(j)) continue;
        if (Scalar<T>::neg(reduced(c, j))) {
          enter = j;
          break;
        }
      }
      if (enter == -1) {
        if (phase1) {
          T v = phase_objective(c);
          if constexpr (std::is_same_v<T, double>) {
            if (v > 1e-7) return false;
          } else {
            if (v > 0) return false;
          }
        }
        return true;
      }
      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (!Scalar<T>::pos(a_[i][enter])) continue;
        if (leave == -1) {
          leave = i;
          continue;
        }
        T lhs = a_[i][width_ - 1] * a_[leave][enter];
        T rhs = a_[leave][width_ - 1] * a_[i][enter];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == -1) return phase1 ? true : false;  // unbounded (phase 2)
      pivot(leave, enter);
    }
  }

  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == j) return true;
    return false;
  }

  T phase_objective(const std::vector<T>& c) const {
    T v = T(0);
    for (int i = 0; i < m_; ++i)
      if (c[basis_[i]] != T(0)) v += c[basis_[i]] * a_[i][width_ - 1];
    return v;
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < art_begin_) continue;
      int enter = -1;
      for (int j = 0; j < art_begin_; ++j) {
        bool nz = false;
        if constexpr (std::is_same_v<T, double>)
          nz = std::fabs(a_[i][j]) > 1e-9;
        else
          nz = a_[i][j] != 0;
        if (nz && !is_basic(j)) {
          enter = j;
          break;
        }
      }
      if (enter != -1) pivot(i, enter);
      // else the row is redundant; the artificial stays basic at value zero
    }
  }

  void extract(const LinearProgram& lp, std::vector<double>& out_x, double& out_obj) {
    out_x.assign(lp.num_vars, 0.0);
    for (int j = 0; j < lp.num_vars; ++j)
      if (lp.fixed[j].has_value()) out_x[j] = *lp.fixed[j];
    T obj = obj_const_;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < struct_vars_) {
        T val = a_[i][width_ - 1];
        out_x[orig_of_[basis_[i]]] = Scalar<T>::to_double(val);
        obj += cost_[basis_[i]] * val;
      }
    }
    out_obj = Scalar<T>::to_double(obj);
  }
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  detail::SimplexTableau<double> tab;
  LpResult res;
  res.status = tab.solve(lp, res.x, res.objective);
  return res;
}

inline LpResult solve_lp_exact(const LinearProgram& lp) {
  detail::SimplexTableau<rational> tab;
  LpResult res;
  res.status = tab.solve(lp, res.x, res.objective);
  res.exact = true;
  return res;
}

// Double-precision solve with the exact-rational fallback on numerical failure.
inline LpResult solve_lp_auto(const LinearProgram& lp) {
  try {
    return solve_lp(lp);
  } catch (const solver_error&) {
    return solve_lp_exact(lp);
  }
}

// ---------------------------------------------------------------------------
// The relaxations.
//
// (P)      per-edge x, per-commodity per-edge y^i, budget sum_e y^i_e <= k-1.
// (P')     per-edge x and one shared y with budget (k-1)(r-1); multiway only.
// (P2)     per-edge x, per-commodity per-node y^i; entering v costs x_e + y^i_v.
// (P3)     per-node x and y^i; entering v costs x_v + y^i_v; x = 0 at terminals.
//
// Path constraints are encoded compactly with shortest-path potentials d^i_v:
// d at the source is 0, d at the sink must reach 1, and every edge relaxes d
// in both directions. Potentials certify shortest-path distances, so this is
// equivalent to the exponential family of path constraints.

struct RelaxationModel {
  Relaxation which = Relaxation::P;
  LinearProgram lp;
  int m = 0, n = 0, num_commodities = 0;
  std::vector<int> x_var;                 // per edge (P,P2) or per node (P3)
  std::vector<std::vector<int>> y_var;    // [commodity][edge|node]; one row for P'
};

struct FractionalSolution {
  Relaxation which = Relaxation::P;
  std::vector<double> x;               // per edge, or per node for (P3)
  std::vector<std::vector<double>> y;  // [commodity][edge|node]; single row for (P')
  double objective = 0.0;
  double beta = 0.0;  // objective / r
  bool exact = false;
};

inline Relaxation relaxation_for_variant(Variant v) {
  switch (v) {
    case Variant::EdgeMulticut:
    case Variant::SinglePair: return Relaxation::P;
    case Variant::Multiway:
    case Variant::AllPairs: return Relaxation::Pprime;
    case Variant::EdgeNodeMulticut: return Relaxation::P2;
    case Variant::NodeNodeMulticut: return Relaxation::P3;
  }
  return Relaxation::P;
}

inline RelaxationModel build_relaxation(const CutInstance& inst, Relaxation which) {
  if (relaxation_for_variant(inst.variant) != which)
    throw contract_error(std::string("relaxation ") + relaxation_token(which) + " does not match variant " +
                         variant_token(inst.variant));
  const MultiGraph& g = inst.graph;
  RelaxationModel model;
  model.which = which;
  model.m = g.edge_count();
  model.n = g.node_count;
  LinearProgram& lp = model.lp;
  double budget = inst.k - 1;

  auto name = [](const std::string& base, int a, int b = -1) {
    return b < 0 ? base + "_" + std::to_string(a) : base + "_" + std::to_string(a) + "_" + std::to_string(b);
  };

  if (which == Relaxation::P || which == Relaxation::Pprime) {
    const auto pairs = inst.commodity_pairs();
    model.x_var.resize(model.m);
    for (int e = 0; e < model.m; ++e) {
      double c = g.edges[e].cost;
      model.x_var[e] = lp.add_var(name("x", e), std::isinf(c) ? 0.0 : c);
      if (std::isinf(c)) lp.fixed[model.x_var[e]] = 0.0;  // undeletable
    }
    if (which == Relaxation::P) {
      model.num_commodities = static_cast<int>(pairs.size());
      model.y_var.resize(model.num_commodities);
      for (int i = 0; i < model.num_commodities; ++i) {
        model.y_var[i].resize(model.m);
        for (int e = 0; e < model.m; ++e) model.y_var[i][e] = lp.add_var(name("y", i, e));
      }
      for (int i = 0; i < model.num_commodities; ++i) {
        auto [s, t] = pairs[i];
        std::vector<int> d(model.n);
        for (int v = 0; v < model.n; ++v) d[v] = lp.add_var(name("d", i, v));
        lp.fixed[d[s]] = 0.0;
        lp.add_row({{d[t], 1.0}}, Rel::Ge, 1.0);
        for (int e = 0; e < model.m; ++e) {
          const Edge& ed = g.edges[e];
          if (ed.u == ed.v) continue;
          // d_v <= d_u + x_e + y^i_e, both orientations
          lp.add_row({{d[ed.v], 1.0}, {d[ed.u], -1.0}, {model.x_var[e], -1.0}, {model.y_var[i][e], -1.0}},
                     Rel::Le, 0.0);
          lp.add_row({{d[ed.u], 1.0}, {d[ed.v], -1.0}, {model.x_var[e], -1.0}, {model.y_var[i][e], -1.0}},
                     Rel::Le, 0.0);
        }
        std::vector<std::pair<int, double>> brow;
        for (int e = 0; e < model.m; ++e) brow.emplace_back(model.y_var[i][e], 1.0);
        lp.add_row(std::move(brow), Rel::Le, budget);
      }
    } else {
      // (P'): shared y, one potential system per terminal covering all pairs
      model.num_commodities = 1;
      model.y_var.resize(1);
      model.y_var[0].resize(model.m);
      for (int e = 0; e < model.m; ++e) model.y_var[0][e] = lp.add_var(name("y", e));
      const auto terms = inst.terminals();
      int r_terms = static_cast<int>(terms.size());
      if (r_terms < 2) throw contract_error("(P') needs >= 2 terminals");
      for (int ti = 0; ti < r_terms; ++ti) {
        std::vector<int> d(model.n);
        for (int v = 0; v < model.n; ++v) d[v] = lp.add_var(name("d", ti, v));
        lp.fixed[d[terms[ti]]] = 0.0;
        for (int tj = 0; tj < r_terms; ++tj)
          if (tj != ti) lp.add_row({{d[terms[tj]], 1.0}}, Rel::Ge, 1.0);
        for (int e = 0; e < model.m; ++e) {
          const Edge& ed = g.edges[e];
          if (ed.u == ed.v) continue;
          lp.add_row({{d[ed.v], 1.0}, {d[ed.u], -1.0}, {model.x_var[e], -1.0}, {model.y_var[0][e], -1.0}},
                     Rel::Le, 0.0);
          lp.add_row({{d[ed.u], 1.0}, {d[ed.v], -1.0}, {model.x_var[e], -1.0}, {model.y_var[0][e], -1.0}},
                     Rel::Le, 0.0);
        }
      }
      std::vector<std::pair<int, double>> brow;
      for (int e = 0; e < model.m; ++e) brow.emplace_back(model.y_var[0][e], 1.0);
      lp.add_row(std::move(brow), Rel::Le, budget * (r_terms - 1));
    }
    return model;
  }

  // (P2) / (P3)
  const auto& pairs = inst.commodities;
  model.num_commodities = static_cast<int>(pairs.size());
  if (which == Relaxation::P2) {
    model.x_var.resize(model.m);
    for (int e = 0; e < model.m; ++e) {
      double c = g.edges[e].cost;
      model.x_var[e] = lp.add_var(name("x", e), std::isinf(c) ? 0.0 : c);
      if (std::isinf(c)) lp.fixed[model.x_var[e]] = 0.0;
    }
  } else {
    if (!g.has_node_costs()) throw contract_error("(P3) requires node costs");
    model.x_var.resize(model.n);
    for (int v = 0; v < model.n; ++v) {
      double c = g.node_costs[v];
      model.x_var[v] = lp.add_var(name("x", v), std::isinf(c) ? 0.0 : c);
      if (std::isinf(c) || inst.is_terminal(v)) lp.fixed[model.x_var[v]] = 0.0;
    }
  }
  model.y_var.resize(model.num_commodities);
  for (int i = 0; i < model.num_commodities; ++i) {
    model.y_var[i].resize(model.n);
    for (int v = 0; v < model.n; ++v) model.y_var[i][v] = lp.add_var(name("y", i, v));
    lp.fixed[model.y_var[i][pairs[i].first]] = 0.0;
    lp.fixed[model.y_var[i][pairs[i].second]] = 0.0;
  }
  for (int i = 0; i < model.num_commodities; ++i) {
    auto [s, t] = pairs[i];
    std::vector<int> d(model.n);
    for (int v = 0; v < model.n; ++v) d[v] = lp.add_var(name("d", i, v));
    lp.fixed[d[s]] = 0.0;
    lp.add_row({{d[t], 1.0}}, Rel::Ge, 1.0);
    for (int e = 0; e < model.m; ++e) {
      const Edge& ed = g.edges[e];
      if (ed.u == ed.v) continue;
      // entering v costs x_e + y^i_v (P2) or x_v + y^i_v (P3)
      int into_v = (which == Relaxation::P2) ? model.x_var[e] : model.x_var[ed.v];
      int into_u = (which == Relaxation::P2) ? model.x_var[e] : model.x_var[ed.u];
      lp.add_row({{d[ed.v], 1.0}, {d[ed.u], -1.0}, {into_v, -1.0}, {model.y_var[i][ed.v], -1.0}}, Rel::Le, 0.0);
      lp.add_row({{d[ed.u], 1.0}, {d[ed.v], -1.0}, {into_u, -1.0}, {model.y_var[i][ed.u], -1.0}}, Rel::Le, 0.0);
    }
    std::vector<std::pair<int, double>> brow;
    for (int v = 0; v < model.n; ++v)
      if (!lp.fixed[model.y_var[i][v]].has_value()) brow.emplace_back(model.y_var[i][v], 1.0);
    lp.add_row(std::move(brow), Rel::Le, budget);
  }
  return model;
}

inline FractionalSolution decode_solution(const RelaxationModel& model, const LpResult& res) {
  if (res.status != LpStatus::Optimal) throw contract_error("decode_solution: LP not optimal");
  FractionalSolution frac;
  frac.which = model.which;
  frac.exact = res.exact;
  frac.objective = res.objective;
  frac.x.resize(model.x_var.size());
  for (size_t i = 0; i < model.x_var.size(); ++i) frac.x[i] = std::max(0.0, res.x[model.x_var[i]]);
  frac.y.resize(model.y_var.size());
  for (size_t i = 0; i < model.y_var.size(); ++i) {
    frac.y[i].resize(model.y_var[i].size());
    for (size_t j = 0; j < model.y_var[i].size(); ++j) frac.y[i][j] = std::max(0.0, res.x[model.y_var[i][j]]);
  }
  return frac;
}

inline FractionalSolution solve_relaxation(const CutInstance& inst, Relaxation which, bool exact = false) {
  RelaxationModel model = build_relaxation(inst, which);
  LpResult res = exact ? solve_lp_exact(model.lp) : solve_lp_auto(model.lp);
  if (res.status == LpStatus::Infeasible) throw infeasible_error("LP relaxation infeasible");
  if (res.status == LpStatus::Unbounded) throw internal_error("cut relaxation cannot be unbounded");
  FractionalSolution frac = decode_solution(model, res);
  int r = std::max(1, inst.r());
  frac.beta = frac.objective / r;
  return frac;
}

// ---------------------------------------------------------------------------
// Induced lengths and validation

// Shortest-path distances from z under the lengths a fractional point induces.
// For (P)/(P') these are symmetric edge lengths x_e + y^i_e; for (P2)/(P3)
// the asymmetric node-entering rule applies (the start node's own length is
// excluded). `mask` restricts to an induced subgraph.
inline std::vector<double> induced_distances(const CutInstance& inst, const FractionalSolution& frac,
                                             int commodity, int z, const std::vector<char>* mask = nullptr) {
  const MultiGraph& g = inst.graph;
  int n = g.node_count;
  if (z < 0 || z >= n) throw contract_error("induced_distances: bad start node");
  if (mask && !(*mask)[z]) throw contract_error("induced_distances: start node outside region");
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // node -> (edge id, other endpoint)
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges[e];
    if (ed.u == ed.v) continue;
    if (mask && (!(*mask)[ed.u] || !(*mask)[ed.v])) continue;
    adj[ed.u].emplace_back(e, ed.v);
    adj[ed.v].emplace_back(e, ed.u);
  }
  const std::vector<double>& y = frac.y[frac.which == Relaxation::Pprime ? 0 : commodity];
  auto arc_len = [&](int e, int head) -> double {
    switch (frac.which) {
      case Relaxation::P:
      case Relaxation::Pprime: return frac.x[e] + y[e];
      case Relaxation::P2: return frac.x[e] + y[head];
      case Relaxation::P3: return frac.x[head] + y[head];
    }
    return 0.0;
  };
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  dist[z] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, z});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [e, w] : adj[v]) {
      double nd = d + arc_len(e, w);
      if (nd < dist[w] - 1e-15) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }
  return dist;
}

struct ValidationReport {
  bool feasible = true;
  double worst_path_slack = std::numeric_limits<double>::infinity();    // min over commodities of dist - 1
  double worst_budget_slack = std::numeric_limits<double>::infinity();  // min over commodities of budget - used
  double worst_fixing = 0.0;  // max |value| over variables the relaxation pins to zero
};

inline ValidationReport validate_fractional(const CutInstance& inst, const FractionalSolution& frac,
                                            Relaxation which, double eps_feas = 1e-7) {
  if (frac.which != which) throw contract_error("validate_fractional: relaxation mismatch");
  ValidationReport rep;
  const auto pairs = inst.commodity_pairs();
  double budget = inst.k - 1;
  if (which == Relaxation::Pprime) {
    double used = 0.0;
    for (double v : frac.y[0]) used += v;
    int rt = static_cast<int>(inst.terminals().size());
    rep.worst_budget_slack = budget * (rt - 1) - used;
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [s, t] = pairs[i];
    auto dist = induced_distances(inst, frac, static_cast<int>(i), s);
    double d = dist[t];
    double slack = std::isinf(d) ? 1.0 : d - 1.0;  // disconnected pairs satisfy every path constraint
    rep.worst_path_slack = std::min(rep.worst_path_slack, slack);
    if (which != Relaxation::Pprime) {
      double used = 0.0;
      for (double v : frac.y[i]) used += v;
      rep.worst_budget_slack = std::min(rep.worst_budget_slack, budget - used);
    }
  }
  if (which == Relaxation::P2 || which == Relaxation::P3) {
    for (size_t i = 0; i < pairs.size(); ++i) {
      rep.worst_fixing = std::max(rep.worst_fixing, std::fabs(frac.y[i][pairs[i].first]));
      rep.worst_fixing = std::max(rep.worst_fixing, std::fabs(frac.y[i][pairs[i].second]));
    }
    if (which == Relaxation::P3)
      for (int v = 0; v < inst.graph.node_count; ++v)
        if (inst.is_terminal(v)) rep.worst_fixing = std::max(rep.worst_fixing, std::fabs(frac.x[v]));
  }
  rep.feasible = rep.worst_path_slack >= -eps_feas && rep.worst_budget_slack >= -eps_feas &&
                 rep.worst_fixing <= eps_feas;
  return rep;
}

// CPLEX LP-format dump for external cross-checks.
inline std::string dump_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  out << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.objective[j] == 0.0) continue;
    out << (first ? " " : " + ") << detail::format_double(lp.objective[j]) << ' ' << lp.var_names[j];
    first = false;
  }
  if (first) out << " 0 " << (lp.num_vars ? lp.var_names[0] : "x");
  out << "\nSubject To\n";
  int rid = 0;
  for (const auto& row : lp.rows) {
    out << " r" << rid++ << ":";
    for (auto& [j, c] : row.coeffs) {
      out << (c >= 0 ? " + " : " - ") << detail::format_double(std::fabs(c)) << ' ' << lp.var_names[j];
    }
    out << (row.rel == Rel::Le ? " <= " : row.rel == Rel::Ge ? " >= " : " = ") << detail::format_double(row.rhs)
        << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.fixed[j].has_value())
      out << ' ' << lp.var_names[j] << " = " << detail::format_double(*lp.fixed[j]) << '\n';
    else
      out << " 0 <= " << lp.var_names[j] << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace kroute
