#include "doctest.h"
#include "fixtures.hpp"
#include "gos/descriptor.hpp"
#include "gos/gosformat.hpp"

using namespace gos;

namespace {

// genus-2 * genus-4: two surface vertices joined by one edge
Descriptor two_surfaces(const std::string& id, int g1, int g2) {
  Descriptor d;
  d.id = id;
  d.catalog_ref = "surf";
  for (int i = 0; i < 2; ++i) {
    VertexInstance v;
    v.id = "w" + std::to_string(i);
    v.atom = "sg" + std::to_string(i == 0 ? g1 : g2);
    v.degree = 1;
    v.slots = {{"s", "c"}};
    d.vertices[v.id] = v;
  }
  EdgeDecl e;
  e.id = "a";
  e.a = {"w0", "s", 1};
  e.b = {"w1", "s", 1};
  d.edges[e.id] = e;
  return d;
}

}  // namespace

TEST_CASE("validate accepts and rejects the basic shapes") {
  Catalog pc = fix::point_catalog();
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(validate(tri, pc).ok());

  Descriptor disc = fix::point_graph("disc", {0, 0, 0, 0}, {{0, 1}, {2, 3}});
  auto rep = validate(disc, pc);
  CHECK(!rep.ok());
  CHECK(rep.str().find("not connected") != std::string::npos);

  Catalog sc = fix::surface_catalog();
  Descriptor s = two_surfaces("s24", 2, 4);
  CHECK(validate(s, sc).ok());

  Descriptor bad = s;
  bad.vertices["w0"].degree = 2;  // needs two slots of class c now
  auto rep2 = validate(bad, sc);
  CHECK(!rep2.ok());
  CHECK(rep2.str().find("slot count") != std::string::npos);
}

TEST_CASE("euler characteristic") {
  Catalog sc = fix::surface_catalog();
  CHECK(euler(two_surfaces("a", 2, 4), sc) == Rat(-9));  // -2 + -6 - 1
  CHECK(euler(two_surfaces("b", 3, 3), sc) == Rat(-9));  // the chi-equal pair
  Catalog pc = fix::point_catalog();
  Descriptor one = fix::point_graph("one", {0}, {});
  CHECK(euler(one, pc) == Rat(1));
  Descriptor tri = fix::point_graph("tri", {0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(euler(tri, pc) == Rat(0));
}

TEST_CASE("volume totals") {
  Catalog c;
  c.id = "vol";
  AtomType a;
  a.id = "m";
  a.base_volume = Rat(2);
  a.pegs.push_back({"c", 1});
  c.atoms[a.id] = a;
  Descriptor d;
  d.id = "d";
  d.catalog_ref = "vol";
  VertexInstance v1{"v1", "m", 1, {{"s1", "c"}}, {}};
  VertexInstance v2{"v2", "m", 2, {{"s1", "c"}, {"s2", "c"}}, {}};
  d.vertices["v1"] = v1;
  d.vertices["v2"] = v2;
  auto vols = total_volume_by_atom(d, c);
  CHECK(vols.at("m") == Rat(6));  // 1*2 + 2*2
}

TEST_CASE("parse/serialize round trip is byte exact") {
  std::string text =
      "catalog pts\n"
      "atom p0 kind=point\n"
      "descriptor d catalog=pts\n"
      "vertex v0 atom=p0 deg=1\n"
      "vertex v1 atom=p0 deg=1\n"
      "edge e0 v0.@.1 v1.@.1\n";
  Document doc = parse_document(text);
  CHECK(doc.descriptors.size() == 1);
  CHECK(doc.descriptor("d").vertices.size() == 2);
  std::string canon = serialize(doc);
  CHECK(serialize(parse_document(canon)) == canon);
}

TEST_CASE("parse diagnostics carry positions") {
  CHECK_THROWS_AS(parse_document(""), ParseError);
  try {
    parse_document(
        "catalog c\natom a kind=symmetric field=R dim=2 basevol=1\npeg a g ends=2\n"
        "descriptor d catalog=c\nvertex v atom=a deg=1\nslot v s class=g\n"
        "edge e v.s.3 v.s.1\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("port out of range") != std::string::npos);
  }
  try {
    parse_document("garbage line\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
}

TEST_CASE("serialized documents validate (self hosting)") {
  Document doc;
  doc.catalog = fix::point_catalog();
  doc.has_catalog = true;
  Descriptor tri = fix::point_graph("tri", {0, 1, 0}, {{0, 1}, {1, 2}, {2, 0}});
  doc.descriptors["tri"] = tri;
  Document back = parse_document(serialize(doc));
  CHECK(validate(back.descriptor("tri"), back.catalog).ok());
  CHECK(serialize(back) == serialize(doc));
}
