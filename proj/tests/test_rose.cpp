#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coxcell/boundary.hpp"
#include "coxcell/errors.hpp"
#include "coxcell/rose.hpp"

using namespace coxcell;

#define CHECK_ERR(expr, expected)                                  \
  do {                                                             \
    try {                                                          \
      (void)(expr);                                                \
      FAIL_CHECK("expected " #expected " from " #expr);            \
    } catch (const Error& e) {                                     \
      CHECK(e.code == Err::expected);                              \
    }                                                              \
  } while (0)

namespace {

const Polyhedron& P() { return builtin_dodecahedron(); }

Word w(std::initializer_list<const char*> ls) {
  Word out;
  for (const char* l : ls) out.push_back(P().face(l));
  return out;
}

RoseSpec spec(std::initializer_list<Word> gens) {
  RoseSpec s;
  s.poly = &P();
  s.gens = gens;
  return s;
}

// hand-built oracle for [[T,B]]: one chain tile, one decorated petal gluing
TileComplex rank1_oracle() {
  TileComplex c;
  c.poly = &P();
  c.gens = {w({"T", "B"})};
  c.add_tile({});
  c.add_tile(w({"T"}));
  c.add_gluing(0, P().face("T"), 1, {});
  c.add_gluing(1, P().face("B"), 0, {1});
  return c;
}

// hand-built oracle for [[T,B],[U1,L4]]: the two concave chains filled in
// by hand, transport on the second fill forced by the holonomy around the
// new interior edge
TileComplex rank2_oracle() {
  TileComplex c;
  c.poly = &P();
  c.gens = {w({"T", "B"}), w({"U1", "L4"})};
  c.add_tile({});
  c.add_tile(w({"T"}));
  c.add_tile(w({"U1"}));
  c.add_gluing(0, P().face("T"), 1, {});
  c.add_gluing(1, P().face("B"), 0, {1});
  c.add_gluing(0, P().face("U1"), 2, {});
  c.add_gluing(2, P().face("L4"), 0, {2});
  c.add_tile(w({"T", "U1"}));  // tile 3
  c.add_tile(w({"T", "L4"}));  // tile 4
  c.add_gluing(1, P().face("U1"), 3, {});
  c.add_gluing(2, P().face("T"), 3, {});
  c.add_gluing(1, P().face("L4"), 4, {});
  c.add_gluing(2, P().face("B"), 4, {2, -1});
  return c;
}

void check_same_complex(const TileComplex& got, const TileComplex& want) {
  REQUIRE(got.tiles.size() == want.tiles.size());
  REQUIRE(got.gens == want.gens);
  for (size_t t = 0; t < want.tiles.size(); ++t) {
    CHECK(got.tiles[t].label == want.tiles[t].label);
    for (Face f = 0; f < P().F(); ++f) {
      CHECK(got.tiles[t].glue[f].to == want.tiles[t].glue[f].to);
      CHECK(got.tiles[t].glue[f].phi == want.tiles[t].glue[f].phi);
    }
  }
}

int concave_count(const TileComplex& c) {
  int n = 0;
  for (const BEdge& e : build_boundary(c).edges)
    if (e.dihedral == 3) ++n;
  return n;
}

}  // namespace

TEST_CASE("word validation") {
  CHECK_NOTHROW(validate_rose_spec(spec({w({"T", "B"})})));
  CHECK_NOTHROW(validate_rose_spec(spec({w({"T", "B"}), w({"U1", "L4"})})));
  CHECK_NOTHROW(validate_rose_spec(spec({w({"T", "B", "U3"})})));

  CHECK_ERR(validate_rose_spec(spec({})), FiniteOrderGenerator);
  // single reflection: order two
  CHECK_ERR(validate_rose_spec(spec({w({"T"})})), FiniteOrderGenerator);
  // commuting pair: order two
  CHECK_ERR(validate_rose_spec(spec({w({"T", "U1"})})), FiniteOrderGenerator);
  // not reduced as written
  CHECK_ERR(validate_rose_spec(spec({w({"T", "T"})})), FiniteOrderGenerator);
  // reduced but not cyclically reduced
  CHECK_ERR(validate_rose_spec(spec({w({"T", "B", "T"})})), FiniteOrderGenerator);
  // out-of-range face id
  CHECK_ERR(validate_rose_spec(spec({Word{P().face("T"), 99}})), UnknownFace);
}

TEST_CASE("prefix validation") {
  // NF([U1,T]) == NF([T,U1]): the proper prefixes collide up to commutation
  CHECK_ERR(validate_rose_spec(spec({w({"T", "U1", "B"}), w({"U1", "T", "L5"})})),
            PrefixCollision);
  // shared first letter is already a shared length-1 prefix
  CHECK_ERR(validate_rose_spec(spec({w({"T", "B"}), w({"T", "L4"})})), PrefixCollision);
}

TEST_CASE("port validation") {
  // last letter of one word equals first letter of the other
  CHECK_ERR(validate_rose_spec(spec({w({"T", "B"}), w({"L1", "T"})})), PortCollision);
  // two chains re-entering the base through the same face
  CHECK_ERR(validate_rose_spec(spec({w({"T", "B"}), w({"U1", "B"})})), PortCollision);
}

TEST_CASE("one-handle complex matches the hand-built gluing") {
  TileComplex c = build_rose(spec({w({"T", "B"})}));
  check_same_complex(c, rank1_oracle());
  CHECK(c.gluing_count() == 2);

  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 30);
  CHECK(b.euler.E == 50);
  CHECK(b.euler.F2 == 22);
  CHECK(b.euler.T == 2);
  CHECK(b.euler.genus == 1);
  CHECK(concave_count(c) == 0);
}

TEST_CASE("two-handle complex closes up to the hand-built gluing") {
  TileComplex c = build_rose(spec({w({"T", "B"}), w({"U1", "L4"})}));
  check_same_complex(c, rank2_oracle());
  CHECK(c.tiles.size() == 5);
  CHECK(c.gluing_count() == 8);

  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 64);
  CHECK(b.euler.E == 112);
  CHECK(b.euler.F2 == 52);
  CHECK(b.euler.T == 5);
  CHECK(b.euler.genus == 2);
  CHECK(b.faces.size() == 16);
  CHECK(concave_count(c) == 0);
}

TEST_CASE("petal letters adjacent to a shared face are rejected") {
  // the merged face picking up three identifications is an annulus, not a disk
  CHECK_ERR(build_rose(spec({w({"T", "B"}), w({"U1", "L3"})})), DiskCheckFailed);
}
