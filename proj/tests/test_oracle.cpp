#include <catch2/catch_amalgamated.hpp>

#include "kroute/oracle.hpp"
#include "testutil.hpp"

using namespace kroute;

TEST_CASE("check_feasible: empty solution on three parallel edges") {
  CutInstance inst = testutil::pair_instance(3, 2);
  CutSolution empty;
  auto rep = check_feasible(inst, empty, 1);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.connectivity == std::vector<int>{3});
  CHECK(rep.violation == 3.0);
}

TEST_CASE("check_feasible: removing two of three is feasible at 1") {
  CutInstance inst = testutil::pair_instance(3, 2);
  CutSolution sol;
  sol.removed = {0, 2};
  auto rep = check_feasible(inst, sol, 1);
  CHECK(rep.feasible);
  CHECK(rep.connectivity == std::vector<int>{1});
}

TEST_CASE("check_feasible records forbidden deletions instead of throwing") {
  CutInstance inst = testutil::pair_instance(1, 2);
  inst.graph.add_edge(0, 1, inf_cost);
  CutSolution sol;
  sol.removed = {1};
  auto rep = check_feasible(inst, sol, 1);
  CHECK(rep.forbidden.size() == 1);
}

TEST_CASE("brute: three parallel unit edges at threshold 1 cost 2") {
  CutInstance inst = testutil::pair_instance(3, 2);
  CutSolution sol = brute_force_cut(inst, 1);
  CHECK(sol.cost == 2.0);
  CHECK(sol.removed.size() == 2);
  CHECK(sol.removed == std::vector<int>{0, 1});  // (cost, lex) minimal
}

TEST_CASE("brute: unit triangle multiway at k=1 needs all three edges") {
  // Every edge directly joins a terminal pair, so the only multiway cut is
  // the full edge set (removing two leaves one pair connected).
  CutInstance inst = testutil::triangle_multiway(1);
  CutSolution sol = brute_force_cut(inst, 0);
  CHECK(sol.cost == 3.0);
}

TEST_CASE("brute: already-feasible instance returns the empty set") {
  CutInstance inst = testutil::pair_instance(1, 3);
  CutSolution sol = brute_force_cut(inst, 2);
  CHECK(sol.cost == 0.0);
  CHECK(sol.removed.empty());
}

TEST_CASE("brute: infinite-cost edges are never enumerated") {
  CutInstance inst = testutil::pair_instance(2, 2);
  inst.graph.add_edge(0, 1, inf_cost);
  CHECK_THROWS_AS(brute_force_cut(inst, 0), infeasible_error);  // inf edge keeps them connected
  CutSolution sol = brute_force_cut(inst, 1);                   // one surviving path allowed
  CHECK(sol.cost == 2.0);                                       // both finite edges go
}

TEST_CASE("brute: node-deletion excludes terminals") {
  CutInstance inst;
  inst.variant = Variant::NodeNodeMulticut;
  inst.k = 2;
  inst.graph.node_count = 4;
  inst.graph.add_edge(0, 2);
  inst.graph.add_edge(2, 1);
  inst.graph.add_edge(0, 3);
  inst.graph.add_edge(3, 1);
  inst.graph.node_costs = {1.0, 1.0, 1.0, 1.0};
  inst.commodities = {{0, 1}};
  CutSolution sol = brute_force_cut(inst, 1);
  CHECK(sol.node_deletion);
  CHECK(sol.cost == 1.0);  // drop one internal node
  CHECK((sol.removed == std::vector<int>{2} || sol.removed == std::vector<int>{3}));
}

TEST_CASE("brute: size guard") {
  CutInstance inst = testutil::pair_instance(23, 2);
  CHECK_THROWS_AS(brute_force_cut(inst, 1), size_error);
}

TEST_CASE("brute: branch-and-bound regime matches plain enumeration") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    GenParams params;
    params.model = GenModel::Gnp;
    params.n = 6;
    params.p = 0.9;
    params.r = 2;
    params.k = 2;
    params.unit_costs = seed % 2 == 0;
    CutInstance inst = generate_instance(params, seed + 9);
    BruteOptions plain;
    BruteOptions forced_bnb;
    forced_bnb.plain_limit = 0;  // push everything through the witness search
    CutSolution a = brute_force_cut(inst, 1, plain);
    CutSolution b = brute_force_cut(inst, 1, forced_bnb);
    CHECK_THAT(a.cost, Catch::Matchers::WithinAbs(b.cost, 1e-9));
  }
}

TEST_CASE("brute: parallel scan agrees with sequential") {
  GenParams params;
  params.model = GenModel::Gnp;
  params.n = 6;
  params.p = 0.7;
  params.r = 2;
  params.k = 2;
  params.unit_costs = false;
  CutInstance inst = generate_instance(params, 4);
  BruteOptions par;
  par.jobs = 4;
  CutSolution a = brute_force_cut(inst, 1);
  CutSolution b = brute_force_cut(inst, 1, par);
  CHECK(a.removed == b.removed);
}

TEST_CASE("remainder_multiway_bound: separated terminals need nothing") {
  CutInstance inst = testutil::triangle_multiway(1);
  CutSolution all;
  all.removed = {0, 1, 2};
  auto rb = remainder_multiway_bound(inst, all);
  CHECK(rb.extra_edges.empty());
  CHECK(rb.cuts_used == 0);
}

TEST_CASE("remainder_multiway_bound: k-1 parallel remainder edges") {
  CutInstance inst;
  inst.variant = Variant::Multiway;
  inst.k = 3;
  inst.graph.node_count = 2;
  inst.graph.add_edge(0, 1);
  inst.graph.add_edge(0, 1);
  inst.terminal_set = {0, 1};
  CutSolution empty;  // already feasible at k-1 = 2
  auto rb = remainder_multiway_bound(inst, empty);
  CHECK(rb.extra_size == 2);
  CHECK(rb.extra_size <= rb.bound);  // (k-1)(r-1) = 2
}

TEST_CASE("remainder_multiway_bound: infeasible input is a contract error") {
  CutInstance inst = testutil::triangle_multiway(1);
  CutSolution empty;
  CHECK_THROWS_AS(remainder_multiway_bound(inst, empty), contract_error);
}

TEST_CASE("remainder_multiway_bound sweep over brute-optimal solutions") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    GenParams params;
    params.model = GenModel::Gnp;
    params.variant = Variant::Multiway;
    params.n = 6;
    params.p = 0.55;
    params.r = 3;
    params.k = 1 + seed % 3;
    CutInstance inst = generate_instance(params, seed + 31);
    CutSolution best = brute_force_cut(inst, inst.k - 1);
    auto rb = remainder_multiway_bound(inst, best);
    CHECK(rb.extra_size <= rb.bound);
  }
}

TEST_CASE("brute_ssve basics") {
  SsveInstance src;
  src.nu = 1;
  src.nv = 1;
  src.edges = {{0, 0}};
  src.alpha_num = 1;
  src.alpha_den = 1;
  SsveResult r = brute_ssve(src);
  CHECK(r.value == 1);
  CHECK(r.witness_set == std::vector<int>{0});
}

TEST_CASE("brute_ssve respects the alpha floor exactly") {
  SsveInstance src;
  src.nu = 3;
  src.nv = 3;
  // u0 has no neighbors; u1 -> v0; u2 -> v0,v1,v2
  src.edges = {{1, 0}, {2, 0}, {2, 1}, {2, 2}};
  src.alpha_num = 1;
  src.alpha_den = 3;  // need |S| >= 1
  CHECK(brute_ssve(src).value == 0);  // S = {u0}
  src.alpha_num = 2;
  CHECK(brute_ssve(src).value == 1);  // S = {u0, u1}
  src.alpha_num = 3;
  CHECK(brute_ssve(src).value == 3);  // S = U
}

TEST_CASE("brute_vertex_cover on a single edge") {
  auto r = brute_vertex_cover(2, {{0, 1}});
  CHECK(r.value == 1);
}

TEST_CASE("brute_minrep: one constraint, singleton labels") {
  MinRepInstance src;
  src.nu = src.nw = 1;
  src.l1 = src.l2 = 1;
  src.edges = {{0, 0, {0}}};
  auto r = brute_minrep(src);
  CHECK(r.value == 2);  // one label each side is the minimum possible
}

TEST_CASE("interdiction oracle matches brute on plain parallel edges") {
  CutInstance inst = testutil::pair_instance(3, 2);
  inst.variant = Variant::SinglePair;
  double opt = exact_singlepair_interdiction(inst, {});
  CutSolution sol = brute_force_cut(inst, 1);
  CHECK_THAT(opt, Catch::Matchers::WithinAbs(sol.cost, 1e-12));
}

TEST_CASE("interdiction oracle verifies interchangeability") {
  CutInstance inst;
  inst.variant = Variant::SinglePair;
  inst.k = 2;
  inst.graph.node_count = 4;
  inst.graph.add_edge(0, 1, 1.0);
  inst.graph.add_edge(0, 2, 1.0);
  inst.graph.add_edge(1, 3, 1.0);
  inst.graph.add_edge(2, 3, 1.0);
  inst.graph.add_edge(2, 3, 1.0);  // node 2 differs from node 1
  inst.commodities = {{0, 3}};
  CHECK_THROWS_AS(exact_singlepair_interdiction(inst, {{1, 2}}), contract_error);
}

TEST_CASE("interdiction oracle with a genuine symmetric group") {
  // s connected to each of 3 clones, each clone to t; clones interchangeable
  CutInstance inst;
  inst.variant = Variant::SinglePair;
  inst.k = 2;
  inst.graph.node_count = 5;
  for (int c = 1; c <= 3; ++c) {
    inst.graph.add_edge(0, c, inf_cost);
    inst.graph.add_edge(c, 4, 1.0);
  }
  inst.commodities = {{0, 4}};
  double opt = exact_singlepair_interdiction(inst, {{1, 2, 3}});
  CutSolution sol = brute_force_cut(inst, 1);  // flow 3 -> remove 2 unit edges
  CHECK_THAT(opt, Catch::Matchers::WithinAbs(sol.cost, 1e-12));
  CHECK(sol.cost == 2.0);
}

TEST_CASE("oracle invariants on random instances") {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    GenParams params;
    params.model = GenModel::Gnp;
    params.n = 6;
    params.p = 0.5;
    params.r = 2;
    params.k = 2;
    CutInstance inst = generate_instance(params, seed + 77);
    int thr = static_cast<int>(seed % 2);
    CutSolution sol = brute_force_cut(inst, thr);
    CHECK(check_feasible(inst, sol, thr).feasible);
  }
}
