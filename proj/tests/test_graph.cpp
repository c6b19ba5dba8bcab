#include <catch2/catch_amalgamated.hpp>

#include "kroute/graph.hpp"
#include "testutil.hpp"

using namespace kroute;

TEST_CASE("parse: pair with parallel edges") {
  std::string doc =
      "# three parallel unit edges\n"
      "kroute edge 2 3 1 2\n"
      "e 0 1 1\n"
      "e 0 1 1\n"
      "e 0 1 1\n"
      "c 0 1\n";
  CutInstance inst = parse_instance(doc);
  CHECK(inst.r() == 1);
  CHECK(inst.graph.edge_count() == 3);
  CHECK(inst.k == 2);
  CHECK(inst.variant == Variant::EdgeMulticut);
}

TEST_CASE("parse: multiway triangle with implicit pairs") {
  std::string doc =
      "kroute multiway 3 3 3 1\n"
      "e 0 1 1\ne 0 2 1\ne 1 2 1\n"
      "T 0 1 2\n";
  CutInstance inst = parse_instance(doc);
  CHECK(inst.variant == Variant::Multiway);
  CHECK(inst.commodities.empty());
  CHECK(inst.commodity_pairs().size() == 3);
  CHECK(inst.r() == 3);
}

TEST_CASE("parse: negative cost rejected") {
  std::string doc = "kroute edge 2 1 1 2\ne 0 1 -1\nc 0 1\n";
  CHECK_THROWS_AS(parse_instance(doc), validation_error);
}

TEST_CASE("parse: malformed and invalid documents") {
  CHECK_THROWS_AS(parse_instance(""), parse_error);
  CHECK_THROWS_AS(parse_instance("kroute edge 2 0 1 0\nc 0 1\n"), validation_error);  // k < 1
  CHECK_THROWS_AS(parse_instance("kroute edge 2 0 1 2\nc 0 0\n"), validation_error);  // s = t
  CHECK_THROWS_AS(parse_instance("kroute edge 2 1 1 2\ne 0 5 1\nc 0 1\n"), validation_error);  // id range
  CHECK_THROWS_AS(parse_instance("kroute edge 2 2 1 2\ne 0 1 1\nc 0 1\n"), parse_error);  // m mismatch
}

TEST_CASE("write/parse round-trip preserves structure") {
  CutInstance inst = testutil::triangle_multiway(1);
  CutInstance again = parse_instance(write_instance(inst));
  CHECK(again.graph.node_count == inst.graph.node_count);
  CHECK(again.graph.edge_count() == inst.graph.edge_count());
  CHECK(again.terminal_set == inst.terminal_set);
  CHECK(again.k == inst.k);
}

TEST_CASE("round-trip keeps the infinity token and decimal costs") {
  CutInstance inst = testutil::pair_instance(1, 2);
  inst.graph.add_edge(0, 1, inf_cost);
  inst.graph.add_edge(0, 1, 0.1, 3);
  std::string doc = write_instance(inst);
  CHECK(doc.find("inf") != std::string::npos);
  CutInstance again = parse_instance(doc);
  REQUIRE(again.graph.edge_count() == 3);
  CHECK(std::isinf(again.graph.edges[1].cost));
  CHECK(again.graph.edges[2].cost == 0.1);
  CHECK(again.graph.edges[2].capacity == 3);
}

TEST_CASE("round-trip of an empty edge list") {
  CutInstance inst;
  inst.variant = Variant::EdgeMulticut;
  inst.k = 1;
  inst.graph.node_count = 2;
  inst.commodities = {{0, 1}};
  CutInstance again = parse_instance(write_instance(inst));
  CHECK(again.graph.edge_count() == 0);
}

TEST_CASE("generate: planted model has the promised crossing solution") {
  GenParams params;
  params.model = GenModel::Planted;
  params.cluster1 = params.cluster2 = 4;
  params.crossing = 3;
  params.k = 2;
  params.r = 2;
  CutInstance inst = generate_instance(params, 7);
  // crossing edges are the last three added and connect the two clusters
  int crossings = 0;
  double cost = 0.0;
  for (const Edge& e : inst.graph.edges)
    if ((e.u < 4) != (e.v < 4)) {
      ++crossings;
      cost += e.cost;
    }
  CHECK(crossings == 3);
  CHECK(cost == 3.0);
  for (auto& [s, t] : inst.commodities) CHECK((s < 4) != (t < 4));
}

TEST_CASE("generate: gnp p=0 yields no edges") {
  GenParams params;
  params.model = GenModel::Gnp;
  params.n = 6;
  params.p = 0.0;
  params.r = 1;
  CutInstance inst = generate_instance(params, 1);
  CHECK(inst.graph.edge_count() == 0);
}

TEST_CASE("generate: deterministic in the seed") {
  GenParams params;
  params.model = GenModel::Gnp;
  params.n = 8;
  params.p = 0.5;
  params.r = 2;
  params.unit_costs = false;
  CHECK(write_instance(generate_instance(params, 1)) == write_instance(generate_instance(params, 1)));
  CHECK(write_instance(generate_instance(params, 1)) != write_instance(generate_instance(params, 2)));
}

TEST_CASE("generate: invalid parameters rejected") {
  GenParams params;
  params.model = GenModel::Gnp;
  params.n = 1;
  CHECK_THROWS_AS(generate_instance(params, 0), validation_error);
  params.n = 5;
  params.p = 1.5;
  CHECK_THROWS_AS(generate_instance(params, 0), validation_error);
}

TEST_CASE("property: generated instances round-trip through the format") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GenParams params;
    params.model = seed % 3 == 0 ? GenModel::Gnp : seed % 3 == 1 ? GenModel::Grid : GenModel::Planted;
    params.n = 5 + seed % 4;
    params.p = 0.4;
    params.width = 2 + seed % 3;
    params.height = 2;
    params.r = 1 + seed % 3;
    params.k = 1 + seed % 3;
    params.unit_costs = seed % 2 == 0;
    params.variant = seed % 4 == 3 ? Variant::EdgeNodeMulticut : Variant::EdgeMulticut;
    CutInstance inst = generate_instance(params, seed);
    std::string doc = write_instance(inst);
    CHECK(write_instance(parse_instance(doc)) == doc);
  }
}
