#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kroute {

// Infinite cost marks an edge/node as undeletable. It is IEEE infinity, never
// a large finite stand-in; algorithms assert they never delete such elements.
inline constexpr double inf_cost = std::numeric_limits<double>::infinity();

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u = 0;
  int v = 0;
  double cost = 1.0;  // finite >= 0 or inf_cost
  int capacity = 1;   // capacity b is shorthand for b parallel unit edges
};

struct MultiGraph {
  int node_count = 0;
  std::vector<Edge> edges;           // edge identity = index into this list
  std::vector<double> node_costs;    // empty unless the node-deletion variant

  bool has_node_costs() const { return !node_costs.empty(); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int add_edge(int u, int v, double cost = 1.0, int capacity = 1) {
    edges.push_back({u, v, cost, capacity});
    return static_cast<int>(edges.size()) - 1;
  }
};

enum class Variant {
  EdgeMulticut,      // edge-deletion / edge-connectivity
  EdgeNodeMulticut,  // edge-deletion / node-connectivity
  NodeNodeMulticut,  // node-deletion / node-connectivity
  Multiway,          // terminal set, edge-connectivity
  AllPairs,          // T = V
  SinglePair,        // r = 1, capacitated s-t variant
};

inline const char* variant_token(Variant v) {
  switch (v) {
    case Variant::EdgeMulticut: return "edge";
    case Variant::EdgeNodeMulticut: return "ednc";
    case Variant::NodeNodeMulticut: return "ndnc";
    case Variant::Multiway: return "multiway";
    case Variant::AllPairs: return "allpairs";
    case Variant::SinglePair: return "singlepair";
  }
  return "?";
}

inline std::optional<Variant> variant_from_token(const std::string& s) {
  if (s == "edge") return Variant::EdgeMulticut;
  if (s == "ednc") return Variant::EdgeNodeMulticut;
  if (s == "ndnc") return Variant::NodeNodeMulticut;
  if (s == "multiway") return Variant::Multiway;
  if (s == "allpairs") return Variant::AllPairs;
  if (s == "singlepair") return Variant::SinglePair;
  return std::nullopt;
}

inline bool variant_node_connectivity(Variant v) {
  return v == Variant::EdgeNodeMulticut || v == Variant::NodeNodeMulticut;
}
inline bool variant_node_deletion(Variant v) { return v == Variant::NodeNodeMulticut; }

struct CutInstance {
  MultiGraph graph;
  Variant variant = Variant::EdgeMulticut;
  int k = 1;
  std::vector<std::pair<int, int>> commodities;  // empty for multiway/all-pairs
  std::vector<int> terminal_set;                 // multiway only; all-pairs is implicit T=V

  // Commodity pairs as seen by algorithms: stored pairs, or all terminal
  // pairs for the multiway/all-pairs variants.
  std::vector<std::pair<int, int>> commodity_pairs() const {
    if (variant == Variant::Multiway || variant == Variant::AllPairs) {
      std::vector<int> t = terminals();
      std::vector<std::pair<int, int>> out;
      for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j) out.emplace_back(t[i], t[j]);
      return out;
    }
    return commodities;
  }

  std::vector<int> terminals() const {
    if (variant == Variant::AllPairs) {
      std::vector<int> t(graph.node_count);
      for (int i = 0; i < graph.node_count; ++i) t[i] = i;
      return t;
    }
    if (variant == Variant::Multiway) return terminal_set;
    std::vector<int> t;
    for (auto& [s, u] : commodities) {
      t.push_back(s);
      t.push_back(u);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }

  // r as the spec counts it: |T| for multiway, stored pair count otherwise.
  int r() const {
    if (variant == Variant::Multiway) return static_cast<int>(terminal_set.size());
    if (variant == Variant::AllPairs) return graph.node_count;
    return static_cast<int>(commodities.size());
  }

  bool is_terminal(int v) const {
    if (variant == Variant::AllPairs) return true;
    if (variant == Variant::Multiway)
      return std::find(terminal_set.begin(), terminal_set.end(), v) != terminal_set.end();
    for (auto& [s, t] : commodities)
      if (s == v || t == v) return true;
    return false;
  }

  void validate() const {
    if (k < 1) throw validation_error("k must be >= 1 (got " + std::to_string(k) + ")");
    int n = graph.node_count;
    auto check_node = [&](int v, const char* what) {
      if (v < 0 || v >= n)
        throw validation_error(std::string(what) + " node id " + std::to_string(v) + " out of range [0," +
                               std::to_string(n) + ")");
    };
    int eid = 0;
    for (const Edge& e : graph.edges) {
      check_node(e.u, "edge endpoint");
      check_node(e.v, "edge endpoint");
      if (!(e.cost >= 0.0))
        throw validation_error("edge " + std::to_string(eid) + " cost must be nonnegative");
      if (e.capacity < 1)
        throw validation_error("edge " + std::to_string(eid) + " capacity must be >= 1");
      ++eid;
    }
    for (auto& [s, t] : commodities) {
      check_node(s, "commodity");
      check_node(t, "commodity");
      if (s == t) throw validation_error("commodity with s = t = " + std::to_string(s));
    }
    for (int t : terminal_set) check_node(t, "terminal");
    if (variant == Variant::Multiway) {
      if (!commodities.empty()) throw validation_error("multiway instance must not list commodity pairs");
      if (terminal_set.size() < 2) throw validation_error("multiway instance needs >= 2 terminals");
    } else if (variant == Variant::AllPairs) {
      if (!commodities.empty() || !terminal_set.empty())
        throw validation_error("all-pairs instance lists neither pairs nor terminals");
    } else {
      if (commodities.empty()) throw validation_error("instance needs r >= 1 commodities");
      if (variant == Variant::SinglePair && commodities.size() != 1)
        throw validation_error("singlepair instance must have exactly one commodity");
    }
    if (variant == Variant::NodeNodeMulticut) {
      if (graph.node_costs.size() != static_cast<size_t>(n))
        throw validation_error("node-deletion instance requires node costs for all nodes");
      for (double c : graph.node_costs)
        if (!(c >= 0.0)) throw validation_error("node costs must be nonnegative");
    }
  }
};

// ---------------------------------------------------------------------------
// Instance format

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

inline std::string format_cost(double c) {
  if (std::isinf(c)) return "inf";
  return format_double(c);
}

inline double parse_cost_token(const std::string& tok, int line_no) {
  if (tok == "inf") return inf_cost;
  double val{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw parse_error("line " + std::to_string(line_no) + ": bad cost literal '" + tok + "'");
  return val;
}

inline long long parse_int_token(const std::string& tok, int line_no, const char* what) {
  long long val{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw parse_error("line " + std::to_string(line_no) + ": bad " + std::string(what) + " '" + tok + "'");
  return val;
}

}  // namespace detail

inline CutInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  CutInstance inst;
  bool header_seen = false;
  long long want_m = 0, want_r = 0;
  std::vector<std::string> toks;
  auto split = [&](const std::string& s) {
    toks.clear();
    std::istringstream ls(s);
    std::string t;
    while (ls >> t) toks.push_back(t);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    split(line);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks[0] != "kroute" || toks.size() != 6)
        throw parse_error("line " + std::to_string(line_no) + ": expected header 'kroute <variant> <n> <m> <r> <k>'");
      auto var = variant_from_token(toks[1]);
      if (!var) throw parse_error("line " + std::to_string(line_no) + ": unknown variant '" + toks[1] + "'");
      inst.variant = *var;
      inst.graph.node_count = static_cast<int>(detail::parse_int_token(toks[2], line_no, "n"));
      want_m = detail::parse_int_token(toks[3], line_no, "m");
      want_r = detail::parse_int_token(toks[4], line_no, "r");
      inst.k = static_cast<int>(detail::parse_int_token(toks[5], line_no, "k"));
      if (inst.graph.node_count < 0 || want_m < 0 || want_r < 0)
        throw parse_error("line " + std::to_string(line_no) + ": negative count in header");
      header_seen = true;
      continue;
    }
    if (toks[0] == "e") {
      if (toks.size() != 4 && toks.size() != 5)
        throw parse_error("line " + std::to_string(line_no) + ": expected 'e <u> <v> <cost|inf> [capacity]'");
      Edge e;
      e.u = static_cast<int>(detail::parse_int_token(toks[1], line_no, "endpoint"));
      e.v = static_cast<int>(detail::parse_int_token(toks[2], line_no, "endpoint"));
      e.cost = detail::parse_cost_token(toks[3], line_no);
      if (toks.size() == 5) e.capacity = static_cast<int>(detail::parse_int_token(toks[4], line_no, "capacity"));
      inst.graph.edges.push_back(e);
    } else if (toks[0] == "c") {
      if (toks.size() != 3) throw parse_error("line " + std::to_string(line_no) + ": expected 'c <s> <t>'");
      inst.commodities.emplace_back(static_cast<int>(detail::parse_int_token(toks[1], line_no, "s")),
                                    static_cast<int>(detail::parse_int_token(toks[2], line_no, "t")));
    } else if (toks[0] == "T") {
      for (size_t i = 1; i < toks.size(); ++i)
        inst.terminal_set.push_back(static_cast<int>(detail::parse_int_token(toks[i], line_no, "terminal")));
    } else if (toks[0] == "w") {
      if (toks.size() != 3) throw parse_error("line " + std::to_string(line_no) + ": expected 'w <v> <cost|inf>'");
      int v = static_cast<int>(detail::parse_int_token(toks[1], line_no, "node"));
      if (inst.graph.node_costs.empty()) inst.graph.node_costs.assign(inst.graph.node_count, 0.0);
      if (v < 0 || v >= inst.graph.node_count)
        throw parse_error("line " + std::to_string(line_no) + ": node id out of range in 'w' line");
      inst.graph.node_costs[v] = detail::parse_cost_token(toks[2], line_no);
    } else {
      throw parse_error("line " + std::to_string(line_no) + ": unknown record '" + toks[0] + "'");
    }
  }
  if (!header_seen) throw parse_error("empty document: missing 'kroute' header");
  if (inst.graph.edge_count() != want_m)
    throw parse_error("header declares m=" + std::to_string(want_m) + " but document has " +
                      std::to_string(inst.graph.edge_count()) + " edges");
  long long have_r = (inst.variant == Variant::Multiway) ? static_cast<long long>(inst.terminal_set.size())
                     : (inst.variant == Variant::AllPairs)
                         ? 0
                         : static_cast<long long>(inst.commodities.size());
  if (inst.variant != Variant::AllPairs && have_r != want_r)
    throw parse_error("header declares r=" + std::to_string(want_r) + " but document has " +
                      std::to_string(have_r));
  inst.validate();
  return inst;
}

inline std::string write_instance(const CutInstance& inst) {
  std::ostringstream out;
  long long r = (inst.variant == Variant::Multiway) ? static_cast<long long>(inst.terminal_set.size())
                : (inst.variant == Variant::AllPairs) ? 0
                                                      : static_cast<long long>(inst.commodities.size());
  out << "kroute " << variant_token(inst.variant) << ' ' << inst.graph.node_count << ' '
      << inst.graph.edge_count() << ' ' << r << ' ' << inst.k << '\n';
  for (const Edge& e : inst.graph.edges) {
    out << "e " << e.u << ' ' << e.v << ' ' << detail::format_cost(e.cost);
    if (e.capacity != 1) out << ' ' << e.capacity;
    out << '\n';
  }
  if (inst.variant == Variant::Multiway) {
    out << "T";
    for (int t : inst.terminal_set) out << ' ' << t;
    out << '\n';
  } else {
    for (auto& [s, t] : inst.commodities) out << "c " << s << ' ' << t << '\n';
  }
  if (inst.graph.has_node_costs())
    for (int v = 0; v < inst.graph.node_count; ++v)
      out << "w " << v << ' ' << detail::format_cost(inst.graph.node_costs[v]) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Random instance generation

enum class GenModel { Gnp, Grid, Planted };

struct GenParams {
  GenModel model = GenModel::Gnp;
  Variant variant = Variant::EdgeMulticut;
  int n = 6;          // gnp
  double p = 0.5;     // gnp edge probability
  int width = 3, height = 3;  // grid
  int cluster1 = 4, cluster2 = 4, crossing = 2;  // planted
  double cluster_p = 0.8;                        // planted intra-cluster density
  int r = 1;
  int k = 2;
  bool unit_costs = true;
  double cost_lo = 0.5, cost_hi = 3.0;
  double inf_prob = 0.0;  // probability an edge is undeletable
};

namespace detail {

// Local helpers instead of std distributions: their output is pinned by this
// code alone, so generated instances are reproducible across toolchains.
inline uint64_t rng_below(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }
inline double rng_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gen_cost(std::mt19937_64& rng, const GenParams& p) {
  if (p.inf_prob > 0.0 && rng_unit(rng) < p.inf_prob) return inf_cost;
  if (p.unit_costs) return 1.0;
  // two-decimal costs so documents stay short and arithmetic stays exact
  double c = p.cost_lo + rng_unit(rng) * (p.cost_hi - p.cost_lo);
  return std::round(c * 100.0) / 100.0;
}

inline bool adjacent(const MultiGraph& g, int a, int b) {
  for (const Edge& e : g.edges)
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
  return false;
}

}  // namespace detail

inline CutInstance generate_instance(const GenParams& params, uint64_t seed) {
  if (params.k < 1) throw validation_error("k must be >= 1");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  CutInstance inst;
  inst.variant = params.variant;
  inst.k = params.k;
  MultiGraph& g = inst.graph;

  switch (params.model) {
    case GenModel::Gnp: {
      if (params.n < 2) throw validation_error("gnp model needs n >= 2");
      if (!(params.p >= 0.0 && params.p <= 1.0)) throw validation_error("gnp probability p must lie in [0,1]");
      g.node_count = params.n;
      for (int u = 0; u < params.n; ++u)
        for (int v = u + 1; v < params.n; ++v)
          if (detail::rng_unit(rng) < params.p) g.add_edge(u, v, detail::gen_cost(rng, params));
      break;
    }
    case GenModel::Grid: {
      if (params.width < 1 || params.height < 1) throw validation_error("grid needs positive dimensions");
      g.node_count = params.width * params.height;
      if (g.node_count < 2) throw validation_error("grid needs >= 2 nodes");
      auto id = [&](int x, int y) { return y * params.width + x; };
      for (int y = 0; y < params.height; ++y)
        for (int x = 0; x < params.width; ++x) {
          if (x + 1 < params.width) g.add_edge(id(x, y), id(x + 1, y), detail::gen_cost(rng, params));
          if (y + 1 < params.height) g.add_edge(id(x, y), id(x, y + 1), detail::gen_cost(rng, params));
        }
      break;
    }
    case GenModel::Planted: {
      if (params.cluster1 < 1 || params.cluster2 < 1) throw validation_error("planted clusters need >= 1 node");
      if (params.crossing < 0) throw validation_error("planted crossing count must be >= 0");
      int n1 = params.cluster1, n2 = params.cluster2;
      g.node_count = n1 + n2;
      auto dense = [&](int lo, int cnt) {
        for (int i = 0; i < cnt; ++i)
          for (int j = i + 1; j < cnt; ++j)
            if (detail::rng_unit(rng) < params.cluster_p) g.add_edge(lo + i, lo + j, detail::gen_cost(rng, params));
      };
      dense(0, n1);
      dense(n1, n2);
      GenParams finite = params;
      finite.inf_prob = 0.0;  // crossing edges are the planted solution, keep deletable
      for (int c = 0; c < params.crossing; ++c) {
        int a = static_cast<int>(detail::rng_below(rng, n1));
        int b = n1 + static_cast<int>(detail::rng_below(rng, n2));
        g.add_edge(a, b, detail::gen_cost(rng, finite));
      }
      break;
    }
  }

  if (variant_node_deletion(params.variant)) {
    g.node_costs.assign(g.node_count, 1.0);
    if (!params.unit_costs)
      for (double& c : g.node_costs) c = std::round((params.cost_lo + detail::rng_unit(rng) * (params.cost_hi - params.cost_lo)) * 100.0) / 100.0;
  }

  auto pick_pair = [&](bool cross_only, bool non_adjacent) -> std::optional<std::pair<int, int>> {
    for (int tries = 0; tries < 400; ++tries) {
      int s, t;
      if (cross_only) {
        s = static_cast<int>(detail::rng_below(rng, params.cluster1));
        t = params.cluster1 + static_cast<int>(detail::rng_below(rng, params.cluster2));
      } else {
        s = static_cast<int>(detail::rng_below(rng, g.node_count));
        t = static_cast<int>(detail::rng_below(rng, g.node_count));
      }
      if (s == t) continue;
      if (non_adjacent && detail::adjacent(g, s, t)) continue;
      return std::make_pair(s, t);
    }
    return std::nullopt;
  };

  if (params.variant == Variant::Multiway) {
    int want = std::max(2, params.r);
    if (want > g.node_count) throw validation_error("terminal count exceeds node count");
    std::vector<int> perm(g.node_count);
    for (int i = 0; i < g.node_count; ++i) perm[i] = i;
    for (int i = g.node_count - 1; i > 0; --i)
      std::swap(perm[i], perm[detail::rng_below(rng, i + 1)]);
    inst.terminal_set.assign(perm.begin(), perm.begin() + want);
    std::sort(inst.terminal_set.begin(), inst.terminal_set.end());
  } else if (params.variant != Variant::AllPairs) {
    bool cross = params.model == GenModel::Planted;
    // Node-deletion commodities must be non-adjacent: a direct edge makes the
    // pair inseparable by node removal and (P3) degenerate.
    bool nonadj = variant_node_deletion(params.variant);
    int want = (params.variant == Variant::SinglePair) ? 1 : std::max(1, params.r);
    for (int i = 0; i < want; ++i) {
      auto pr = pick_pair(cross, nonadj);
      if (!pr) throw validation_error("could not sample a commodity pair under the variant's constraints");
      inst.commodities.push_back(*pr);
    }
  }
  inst.validate();
  return inst;
}

}  // namespace kroute
