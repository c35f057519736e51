#include "doctest.h"
#include "fixtures.hpp"
#include "gos/perm.hpp"
#include "gos/permgroup.hpp"

using namespace gos;

TEST_CASE("cycle parsing and printing") {
  Perm p = Perm::parse_cycles("(1 2 3)(4 5)");
  CHECK(p.degree() == 5);
  CHECK(p.apply(0) == 1);
  CHECK(p.apply(2) == 0);
  CHECK(p.apply(3) == 4);
  CHECK(p.cycles() == "(1 2 3)(4 5)");
  CHECK(Perm::parse_cycles("()", 3) == Perm::identity(3));
  CHECK(Perm::identity(4).cycles() == "()");
}

TEST_CASE("composition convention (a*b)(x) = a(b(x))") {
  Perm a = Perm::parse_cycles("(1 2)", 3);
  Perm b = Perm::parse_cycles("(2 3)", 3);
  Perm ab = a * b;
  // x=2 (0-based 1): b sends 2->3, a fixes 3
  CHECK(ab.apply(1) == 2);
  CHECK((ab * ab.inverse()).is_identity());
  Perm g = Perm::parse_cycles("(1 3)", 3);
  CHECK(a.conjugate_by(g) == g * a * g.inverse());
}

TEST_CASE("closure orders of standard groups") {
  auto s3 = PermGroup::closure(3, {Perm::parse_cycles("(1 2 3)"), Perm::parse_cycles("(1 2)", 3)});
  CHECK(s3.order() == 6);
  auto a5 = PermGroup::closure(
      5, {Perm::parse_cycles("(1 2 3 4 5)"), Perm::parse_cycles("(1 2 3)", 5)});
  CHECK(a5.order() == 60);
  auto s4 = PermGroup::closure(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2)", 4)});
  CHECK(s4.order() == 24);
  CHECK_THROWS_AS(PermGroup::closure(
                      8, {Perm::parse_cycles("(1 2 3 4 5 6 7 8)"), Perm::parse_cycles("(1 2)", 8)},
                      100),
                  std::runtime_error);
}

TEST_CASE("normal cores: frozen small cases") {
  auto s4 = PermGroup::closure(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2)", 4)});
  auto h12 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2)", 4)});
  CHECK(normal_core(s4, h12).order() == 1);
  auto a4 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2 3)", 4), Perm::parse_cycles("(2 3 4)", 4)});
  CHECK(a4.order() == 12);
  CHECK(normal_core(s4, a4).order() == 12);  // already normal
  auto d4 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 3)", 4)});
  CHECK(d4.order() == 8);
  CHECK(normal_core(s4, d4).order() == 4);  // the Klein four-group
}

TEST_CASE("coset action on S4 / D4") {
  auto s4 = PermGroup::closure(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2)", 4)});
  auto d4 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 3)", 4)});
  CosetAction act = coset_action(s4, d4);
  CHECK(act.index == 3);
  CHECK(act.gen_images.size() == s4.gens.size());
  CHECK(act.kernel.elements == normal_core(s4, d4).elements);
}

TEST_CASE("intersect_all") {
  auto s4 = PermGroup::closure(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2)", 4)});
  auto a4 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2 3)", 4), Perm::parse_cycles("(2 3 4)", 4)});
  auto d4 = Subgroup::from_gens(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 3)", 4)});
  auto cap = intersect_all(s4, {a4, d4});
  CHECK(cap.order() == 4);  // A4 ∩ D4 = V4
  CHECK(intersect_all(s4, {}).order() == 24);
}

TEST_CASE("local symmetry datum checks") {
  LocalSymmetryDatum d;
  d.id = "c2";
  d.group = PermGroup::closure(2, {Perm::parse_cycles("(1 2)")});
  d.marked["m"] = Subgroup::from_gens(2, {Perm::identity(2)});
  d.peg_action = {Perm::parse_cycles("(1 2)")};
  CHECK(d.check().empty());

  LocalSymmetryDatum bad = d;
  bad.marked["m"] = Subgroup::from_gens(2, {Perm::parse_cycles("(1 2)")});
  bad.marked["m"].elements.push_back(Perm::parse_cycles("(1 2)", 3));  // wrong degree junk
  CHECK(!bad.check().empty());
}

TEST_CASE("subgroup enumeration oracle sanity") {
  auto s3 = PermGroup::closure(3, {Perm::parse_cycles("(1 2 3)"), Perm::parse_cycles("(1 2)", 3)});
  auto subs = fix::all_subgroups(s3);
  CHECK(subs.size() == 6);  // 1, three C2, C3, S3
  auto s4 = PermGroup::closure(4, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2)", 4)});
  CHECK(fix::all_subgroups(s4).size() == 30);
}
