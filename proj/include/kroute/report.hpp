#pragma once

#include <json.hpp>

#include "kroute/algorithms.hpp"

namespace kroute {

using json = nlohmann::ordered_json;

// Machine-readable run report: every field except wall_ms is a pure function
// of (instance, parameters, seed), and emission order is fixed so reports are
// byte-identical across runs.

inline json instance_digest(const CutInstance& inst) {
  json j;
  j["variant"] = variant_token(inst.variant);
  j["n"] = inst.graph.node_count;
  j["m"] = inst.graph.edge_count();
  j["r"] = inst.r();
  j["k"] = inst.k;
  return j;
}

inline json solution_json(const CutSolution& sol) {
  json j;
  j["node_deletion"] = sol.node_deletion;
  j["removed"] = sol.removed;
  j["cost"] = sol.cost;
  j["declared_threshold"] = sol.declared_threshold;
  if (sol.removed_foreign_terminal) j["removed_foreign_terminal"] = true;
  return j;
}

inline json certificates_json(const CutSolution& sol) {
  json arr = json::array();
  for (const auto& c : sol.certificates) {
    json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["pass"] = c.pass;
    arr.push_back(j);
  }
  return arr;
}

inline json trace_json(const CutSolution& sol) {
  json arr = json::array();
  for (const auto& t : sol.trace) {
    json j;
    j["commodity"] = t.commodity;
    j["center"] = t.center;
    j["rho"] = t.rho;
    j["boundary_cost"] = t.boundary_cost;
    j["v_side_rhs"] = t.v_side_rhs;
    j["vbar_side_rhs"] = t.vbar_side_rhs;
    j["y_boundary_count"] = t.y_boundary_count;
    j["q"] = t.q;
    j["took_anti_ball"] = t.took_anti_ball;
    arr.push_back(j);
  }
  return arr;
}

inline json feasibility_json(const FeasibilityReport& rep) {
  json j;
  j["threshold"] = rep.threshold;
  j["feasible"] = rep.feasible;
  j["connectivity"] = rep.connectivity;
  if (std::isinf(rep.violation))
    j["violation"] = "inf";
  else
    j["violation"] = rep.violation;
  if (!rep.forbidden.empty()) j["forbidden"] = rep.forbidden;
  return j;
}

}  // namespace kroute
