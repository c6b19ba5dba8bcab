#pragma once

#include "kroute/graph.hpp"

namespace kroute::testutil {

// Small instance builders shared across suites.

inline CutInstance pair_instance(int parallel_edges, int k, double cost = 1.0) {
  CutInstance inst;
  inst.variant = Variant::EdgeMulticut;
  inst.k = k;
  inst.graph.node_count = 2;
  for (int i = 0; i < parallel_edges; ++i) inst.graph.add_edge(0, 1, cost);
  inst.commodities = {{0, 1}};
  return inst;
}

inline CutInstance triangle_multiway(int k, double c01 = 1.0, double c02 = 1.0, double c12 = 1.0) {
  CutInstance inst;
  inst.variant = Variant::Multiway;
  inst.k = k;
  inst.graph.node_count = 3;
  inst.graph.add_edge(0, 1, c01);
  inst.graph.add_edge(0, 2, c02);
  inst.graph.add_edge(1, 2, c12);
  inst.terminal_set = {0, 1, 2};
  return inst;
}

}  // namespace kroute::testutil
