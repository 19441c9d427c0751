#include "doctest.h"
#include "hierdist/oracle.hpp"
#include "hierdist/verification.hpp"

using namespace hierdist;

TEST_CASE("brute-force distances") {
  IncrementalMultigraph g(4);
  for (VertexId v = 0; v < 4; ++v) g.add_vertex(v);
  g.insert_edge(0, 1, 2);
  g.insert_edge(1, 2, 2);
  g.insert_edge(0, 2, 10);
  CHECK(brute_force_dist(g, 0, 0) == 0);
  CHECK(brute_force_dist(g, 0, 2) == 4);
  CHECK_FALSE(brute_force_dist(g, 0, 3).has_value());
  const VertexId src[] = {0};
  CHECK(dijkstra(g, src, false, 3)[2] == kInfinite);
  CHECK(dijkstra(g, src, false, 3)[1] == 2);
}

TEST_CASE("incremental all-pairs distances") {
  IncrementalApsp a(4);
  CHECK(a.dist(1, 1) == 0);
  CHECK(a.dist(0, 1) == kInfinite);
  a.insert_edge(0, 1, 5);
  a.insert_edge(1, 2, 5);
  CHECK(a.dist(0, 2) == 10);
  a.insert_edge(0, 2, 3);
  CHECK(a.dist(2, 0) == 3);
  CHECK(a.dist(1, 2) == 5);
  a.insert_edge(3, 3, 1);
  CHECK(a.dist(3, 0) == kInfinite);
}

TEST_CASE("level 1 materializes to G") {
  DistanceOracle o(4, 10);
  o.insert_edge(0, 1, 3);
  o.insert_edge(1, 2, 7);
  const LevelSnapshot s = materialize_level(o, 1);
  CHECK(s.graph.num_edges() == 2);
  CHECK(s.graph.edge(0).weight == 6);
  CHECK(s.rounded.edge(0).weight == 8);
  CHECK(s.rounded.edge(1).weight == 16);
}

TEST_CASE("suite on an edgeless graph passes") {
  DistanceOracle o(5, 10);
  CHECK(run_invariant_suite(o, CheckDepth::Full).passed());
}

TEST_CASE("suite on a small stream passes at full depth") {
  DistanceOracle o(50, 20);
  for (VertexId v = 0; v + 1 < 50; ++v) o.insert_edge(v, v + 1, 1 + (v * 7) % 20);
  for (VertexId v = 0; v + 5 < 50; v += 3) o.insert_edge(v, v + 5, 1 + (v * 3) % 20);
  const InvariantReport rep = run_invariant_suite(o, CheckDepth::Full);
  CHECK_MESSAGE(rep.passed(), rep.to_text());
  CHECK(rep.max_stretch >= 1.0);
}

TEST_CASE("a corrupted edge trips the lower bound") {
  OracleConfig cfg;
  cfg.bhat_cap = 3;
  DistanceOracle o(12, 10, cfg);
  for (VertexId v = 0; v + 1 < 12; ++v) o.insert_edge(v, v + 1, 5);
  REQUIRE(o.level(2).graph().num_edges() > 0);
  CHECK(check_edge_lower_bound(o).passed);
  o.corrupt_edge_for_testing(2, 0, 1);
  const InvariantResult r = check_edge_lower_bound(o);
  CHECK_FALSE(r.passed);
  CHECK_FALSE(r.witness.empty());
  const InvariantReport rep = run_invariant_suite(o, CheckDepth::Full);
  CHECK_FALSE(rep.passed());
  CHECK(rep.to_text().find("CHECK FAIL lower_bound") != std::string::npos);
}

TEST_CASE("stretch on a single edge comes from rounding only") {
  DistanceOracle o(2, 10);
  o.insert_edge(0, 1, 3);
  const StretchStats s = measure_stretch(o, 10, 1);
  CHECK(s.max_stretch >= 1.0);
  CHECK(s.max_stretch < 2.0);
}

TEST_CASE("shadow history agrees on a short stream") {
  OracleConfig cfg;
  cfg.bhat_cap = 3;
  DistanceOracle o(20, 16, cfg);
  ShadowHistory shadow(o);
  for (VertexId v = 0; v + 1 < 20; ++v) {
    o.insert_edge(v, v + 1, 1 + v % 16);
    shadow.record(o);
    const auto issues = shadow.compare(o);
    CHECK_MESSAGE(issues.empty(), (issues.empty() ? "" : issues.front()));
  }
  CHECK(shadow.stages() == 20);
}
