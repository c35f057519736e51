#include "doctest.h"
#include "fixtures.hpp"
#include "gos/invariants.hpp"
#include "gos/leighton.hpp"

using namespace gos;

namespace {

// one symmetric vertex of the given degree with all its ports closed by loops;
// the atom's single peg class has two ends, so darts pair off per slot
Descriptor bouquet(const Catalog&, const std::string& id, long long deg) {
  Descriptor d;
  d.id = id;
  d.catalog_ref = "m2";
  VertexInstance v;
  v.id = "v";
  v.atom = "m";
  v.degree = deg;
  for (long long i = 0; i < deg; ++i) v.slots.push_back({"s" + std::to_string(i), "c"});
  d.vertices["v"] = v;
  for (long long i = 0; i < deg; ++i) {
    EdgeDecl e;
    e.id = "l" + std::to_string(i);
    e.a = {"v", "s" + std::to_string(i), 1};
    e.b = {"v", "s" + std::to_string(i), 2};
    d.edges[e.id] = e;
  }
  return d;
}

Catalog two_end_catalog() {
  Catalog c;
  c.id = "m2";
  AtomType a;
  a.id = "m";
  a.field = Field::R;
  a.dim = 2;
  a.base_volume = Rat(2);
  a.base_euler = Rat(-2);
  a.pegs.push_back({"c", 2});
  c.atoms[a.id] = a;
  return c;
}

}  // namespace

TEST_CASE("minimal degree pairs") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  Descriptor quad = fix::point_graph("quad", {0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});

  auto same = minimal_degree_pair(tri, tri, pc);
  REQUIRE(same);
  CHECK(*same == std::pair<long long, long long>{1, 1});

  auto p34 = minimal_degree_pair(tri, quad, pc);
  REQUIRE(p34);
  CHECK(*p34 == std::pair<long long, long long>{4, 3});  // 12 vertices upstairs

  Catalog mc = two_end_catalog();
  auto p23 = minimal_degree_pair(bouquet(mc, "b2", 2), bouquet(mc, "b3", 3), mc);
  REQUIRE(p23);
  CHECK(*p23 == std::pair<long long, long long>{3, 2});  // vertex-space degree lcm 6
}

TEST_CASE("common cover of 3-cycle and 4-cycle is the 12-cycle") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  Descriptor quad = fix::point_graph("quad", {0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});

  CommonCoverResult r = common_cover(tri, quad, pc);
  REQUIRE(r.cover);
  CHECK(r.cover->na == 4);
  CHECK(r.cover->nb == 3);
  CHECK(r.cover->c.vertices.size() == 12);
  CHECK(r.cover->c.edges.size() == 12);
  WitnessReport wr = commensurating_witness(*r.cover, tri, quad, pc);
  CHECK(wr.ok);
  CHECK(wr.na == 4);
  CHECK(wr.nb == 3);
}

TEST_CASE("common cover of equal descriptors has degrees (1,1)") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  Descriptor tri2 = tri;
  tri2.id = "tri2";
  CommonCoverResult r = common_cover(tri, tri2, pc);
  REQUIRE(r.cover);
  CHECK(r.cover->na == 1);
  CHECK(r.cover->nb == 1);
  CHECK(commensurating_witness(*r.cover, tri, tri2, pc).ok);
}

TEST_CASE("K4 and K33 meet first at a 24-vertex common cover") {
  // covers of K33 are bipartite, but every 3-fold cover of K4 keeps an odd
  // cycle (a triangle's preimage has total length 9), so the minimal ladder
  // rung (3, 2) is empty and the first common cover sits at (6, 4)
  Catalog pc = fix::point_catalog();
  Descriptor k4 = fix::point_graph("k4", {0, 0, 0, 0},
                                   {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  Descriptor k33 = fix::point_graph(
      "k33", {0, 0, 0, 0, 0, 0},
      {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  SearchBudget roomy;
  roomy.max_nodes = 200000000;
  roomy.time_limit_s = 120;
  CommonCoverResult r = common_cover(k4, k33, pc, roomy);
  REQUIRE(r.cover);
  CHECK(r.cover->na == 6);
  CHECK(r.cover->nb == 4);
  CHECK(r.cover->c.vertices.size() == 24);
  CHECK(commensurating_witness(*r.cover, k4, k33, pc).ok);
}

TEST_CASE("symmetric-atom common cover with local degrees") {
  Catalog mc = two_end_catalog();
  Descriptor b2 = bouquet(mc, "b2", 2), b3 = bouquet(mc, "b3", 3);
  CommonCoverResult r = common_cover(b2, b3, mc);
  REQUIRE(r.cover);
  CHECK(r.cover->na == 3);
  CHECK(r.cover->nb == 2);
  WitnessReport wr = commensurating_witness(*r.cover, b2, b3, mc);
  CHECK(wr.ok);
  CHECK(euler(r.cover->c, mc) == Rat(3) * euler(b2, mc));
}

TEST_CASE("precondition and budget failures") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  Descriptor path = fix::point_graph("path", {0, 0, 0}, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(common_cover(tri, path, pc), std::invalid_argument);

  Descriptor quad = fix::point_graph("quad", {0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  SearchBudget tiny;
  tiny.max_nodes = 1;
  CommonCoverResult r = common_cover(tri, quad, pc, tiny);
  CHECK(!r.cover);
  CHECK(!r.report.ladder.empty());
  CHECK(!r.report.reason.empty());
  CHECK(!r.report.str().empty());
}

TEST_CASE("exhaustive oracle agrees on the 3-cycle / 4-cycle instance") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  Descriptor quad = fix::point_graph("quad", {0, 0, 0, 0}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto exists = fix::common_cover_exists_oracle(tri, quad, 4, 3, 4000000);
  REQUIRE(exists.has_value());
  CHECK(*exists);
  // degrees that cannot balance the vertex counts
  auto no = fix::common_cover_exists_oracle(tri, quad, 2, 3, 4000000);
  REQUIRE(no.has_value());
  CHECK(!*no);
}
