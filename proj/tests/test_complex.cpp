#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "coxcell/boundary.hpp"
#include "coxcell/complex.hpp"
#include "coxcell/errors.hpp"

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

TileComplex single_tile() {
  TileComplex c;
  c.poly = &P();
  c.add_tile({});
  return c;
}

// two tiles glued along T and B: closed-up neighborhood of one handle
TileComplex rank1_rose() {
  TileComplex c;
  c.poly = &P();
  c.gens = {w({"T", "B"})};
  c.add_tile({});
  c.add_tile(w({"T"}));
  c.add_gluing(0, P().face("T"), 1, {});
  c.add_gluing(1, P().face("B"), 0, {1});
  return c;
}

TileComplex rank2_preclosure(const char* second) {
  TileComplex c;
  c.poly = &P();
  c.gens = {w({"T", "B"}), {P().face("U1"), P().face(second)}};
  c.add_tile({});
  c.add_tile(w({"T"}));
  c.add_tile(w({"U1"}));
  c.add_gluing(0, P().face("T"), 1, {});
  c.add_gluing(1, P().face("B"), 0, {1});
  c.add_gluing(0, P().face("U1"), 2, {});
  c.add_gluing(2, P().face(second), 0, {2});
  return c;
}

// the two dihedral-3 chains filled in by hand, per the closure formulas
TileComplex rank2_closed() {
  TileComplex c = rank2_preclosure("L4");
  c.add_tile(w({"T", "U1"}));  // tile 3
  c.add_tile(w({"T", "L4"}));  // tile 4
  c.add_gluing(1, P().face("U1"), 3, {});
  c.add_gluing(2, P().face("T"), 3, {});
  c.add_gluing(1, P().face("L4"), 4, {});
  c.add_gluing(2, P().face("B"), 4, {2, -1});
  return c;
}

}  // namespace

TEST_CASE("single tile boundary is the polyhedron sphere") {
  TileComplex c = single_tile();
  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 20);
  CHECK(b.euler.E == 30);
  CHECK(b.euler.F2 == 12);
  CHECK(b.euler.T == 1);
  CHECK(b.euler.chi() == 1);
  CHECK(b.euler.genus == 0);
  CHECK(b.euler.Vb == 20);
  CHECK(b.euler.Eb == 30);
  CHECK(b.euler.Fb == 12);
  CHECK(b.faces.size() == 12);
  CHECK(b.pieces.size() == 12);
  for (const BEdge& e : b.edges) CHECK(e.dihedral == 1);
  for (const BFace& f : b.faces) {
    CHECK(f.pieces.size() == 1);
    CHECK(f.flats.empty());
    CHECK(f.walk.size() == 5);
  }
  // face ids follow face letters for a single tile
  int fT = b.face_of(0, P().face("T"));
  CHECK(fT == 0);
  CHECK(b.face_tag(fT) == "t0.T");
  std::set<int> adj(b.faceAdj[fT].begin(), b.faceAdj[fT].end());
  std::set<int> expect;
  for (const char* l : {"U1", "U2", "U3", "U4", "U5"})
    expect.insert(b.face_of(0, P().face(l)));
  CHECK(adj == expect);
  // walk of the T face visits its five edges in ring order
  std::vector<int> seen;
  for (const WalkStep& s : b.faces[fT].walk) seen.push_back(s.edge);
  CHECK(seen == std::vector<int>{0, 1, 2, 3, 4});
  for (size_t i = 0; i < 5; ++i)
    CHECK(b.faces[fT].walk[i].cout == b.faces[fT].walk[(i + 1) % 5].cin);
}

TEST_CASE("gluing validation") {
  TileComplex c = single_tile();
  c.add_tile(w({"T"}));
  CHECK_ERR(c.add_gluing(0, P().face("T"), 0, {}), InvalidGluing);  // self
  CHECK_ERR(c.add_gluing(0, 99, 1, {}), InvalidGluing);
  // wrong decoration: no generators, so phi must be empty
  CHECK_ERR(c.add_gluing(0, P().face("B"), 1, {}), InvalidGluing);  // labels differ by T, not B
  c.add_gluing(0, P().face("T"), 1, {});
  CHECK_ERR(c.add_gluing(0, P().face("T"), 1, {}), InvalidGluing);  // already glued
  // tampering behind the API is caught on rebuild
  c.tiles[1].glue[P().face("B")] = Gluing{0, {}};
  c.tiles[0].glue[P().face("B")] = Gluing{1, {}};
  CHECK_ERR(build_boundary(c), InvalidGluing);
}

TEST_CASE("rank-1 rose: ten two-piece disk faces on a genus-1 surface") {
  TileComplex c = rank1_rose();
  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 30);
  CHECK(b.euler.E == 50);
  CHECK(b.euler.F2 == 22);
  CHECK(b.euler.T == 2);
  CHECK(b.euler.chi() == 0);
  CHECK(b.euler.genus == 1);
  CHECK(b.euler.chi_b() == 0);
  CHECK(b.faces.size() == 10);
  int flats = 0;
  for (const BEdge& e : b.edges) {
    CHECK(e.dihedral <= 2);
    flats += e.flat();
  }
  CHECK(flats == 10);
  for (const BFace& f : b.faces) {
    CHECK(f.pieces.size() == 2);
    CHECK(f.flats.size() == 1);
    CHECK(f.walk.size() == 8);
  }
  // U faces merge across the T gluing, L faces across the B gluing
  CHECK(b.face_of(0, P().face("U1")) == b.face_of(1, P().face("U1")));
  CHECK(b.face_of(0, P().face("L3")) == b.face_of(1, P().face("L3")));
  CHECK(euler_invariants(c).genus == 1);
}

TEST_CASE("rank-2 rose before closure: genus 2 with two three-quarter edges") {
  TileComplex c = rank2_preclosure("L4");
  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 40);
  CHECK(b.euler.E == 70);
  CHECK(b.euler.F2 == 32);
  CHECK(b.euler.T == 3);
  CHECK(b.euler.chi() == -1);
  CHECK(b.euler.genus == 2);
  std::vector<Sector> deep;
  for (const BEdge& e : b.edges)
    if (e.dihedral == 3) deep.push_back(e.key);
  REQUIRE(deep.size() == 2);
  CHECK(deep[0] == Sector{0, P().face("T"), P().face("U1")});
  CHECK(deep[1] == Sector{0, P().face("L4"), P().face("B")});
}

TEST_CASE("rank-2 rose closed up: all sixteen faces are disks") {
  TileComplex c = rank2_closed();
  BoundaryComplex b = build_boundary(c);
  CHECK(b.euler.V == 64);
  CHECK(b.euler.E == 112);
  CHECK(b.euler.F2 == 52);
  CHECK(b.euler.T == 5);
  CHECK(b.euler.chi() == -1);
  CHECK(b.euler.genus == 2);
  CHECK(b.euler.Vb == 64);
  CHECK(b.euler.Eb == 110);
  CHECK(b.euler.Fb == 44);
  CHECK(b.faces.size() == 16);
  for (const BEdge& e : b.edges) CHECK(e.dihedral <= 2);
  // the four-piece cycle face: U5 pieces of t0,t1,t2,t3 merge around the handle
  int fU5 = b.face_of(0, P().face("U5"));
  CHECK(fU5 == b.face_of(1, P().face("U5")));
  CHECK(fU5 == b.face_of(2, P().face("U5")));
  CHECK(fU5 == b.face_of(3, P().face("U5")));
  CHECK(b.faces[fU5].pieces.size() == 4);
  CHECK(b.faces[fU5].flats.size() == 4);
  CHECK(b.faces[fU5].walk.size() == 12);
  CHECK(b.face_of(4, P().face("U5")) != fU5);
  // five-piece tree faces
  int fU3 = b.face_of(0, P().face("U3"));
  CHECK(b.faces[fU3].pieces.size() == 5);
  CHECK(b.faces[fU3].flats.size() == 4);
}

TEST_CASE("petal words with a common neighbor produce annulus faces") {
  // U2 and L2 are adjacent to both U1 and L3, so their pieces chain around the
  // whole petal: the merged face has chi = 0 and the build must reject it.
  CHECK_ERR(build_boundary(rank2_preclosure("L3")), DiskCheckFailed);
}

TEST_CASE("disk defect classifier") {
  TileComplex c = single_tile();
  BoundaryComplex b = build_boundary(c);
  int fT = b.face_of(0, P().face("T"));
  int fB = b.face_of(0, P().face("B"));
  int fU1 = b.face_of(0, P().face("U1"));
  int fL2 = b.face_of(0, P().face("L2"));
  CHECK(disk_defect(b, {fT}) == "");
  CHECK(disk_defect(b, {fT, fU1}) == "");
  CHECK(disk_defect(b, {fT, fU1, fL2}) == "");  // path of three faces
  CHECK(disk_defect(b, {fT, fB}) == "not connected");
  std::vector<int> all;
  for (int i = 0; i < 12; ++i) all.push_back(i);
  CHECK(disk_defect(b, all) == "no boundary (closed or empty)");
  std::vector<int> eleven;
  for (int i = 0; i < 12; ++i)
    if (i != fB) eleven.push_back(i);
  CHECK(disk_defect(b, eleven) == "");
  // hemisphere around T
  std::vector<int> n1 = faces_adjacent_to(b, fT);
  n1.push_back(fT);
  CHECK(n1.size() == 6);
  CHECK(disk_defect(b, n1) == "");
  std::vector<int> n2 = faces_meeting(b, n1);
  CHECK(n2.size() == 11);  // everything except the antipodal face
  CHECK(std::find(n2.begin(), n2.end(), fB) == n2.end());
  CHECK(disk_defect(b, n2) == "");
}

TEST_CASE("expansion glues a fresh layer over a face") {
  TileComplex c = single_tile();
  BoundaryComplex b = build_boundary(c);
  int fT = b.face_of(0, P().face("T"));
  ExpansionRecord rec = expand_face(c, b, fT);
  CHECK(rec.baseTiles == std::vector<int>{0});
  CHECK(rec.newTiles == std::vector<int>{1});
  CHECK(c.tiles[1].label == w({"T"}));
  BoundaryComplex b2 = build_boundary(c);
  CHECK(b2.euler.genus == 0);
  CHECK(b2.euler.chi() == 1);
  CHECK(b2.faces.size() == 17);
  // ring faces extend the old neighbors of T
  for (const char* l : {"U1", "U2", "U3", "U4", "U5"}) {
    int f = b2.face_of(0, P().face(l));
    CHECK(f == b2.face_of(1, P().face(l)));
    CHECK(b2.faces[f].pieces.size() == 2);
  }
  // everything else is a single pentagon
  for (const char* l : {"L1", "L2", "L3", "L4", "L5", "B"}) {
    CHECK(b2.faces[b2.face_of(0, P().face(l))].pieces.size() == 1);
    CHECK(b2.faces[b2.face_of(1, P().face(l))].pieces.size() == 1);
  }
  CHECK(b2.face_of(0, P().face("T")) == -1);  // covered
  CHECK(b2.face_of(1, P().face("T")) == -1);
}

TEST_CASE("expansion of a merged face inherits sibling gluings") {
  TileComplex c = rank1_rose();
  BoundaryComplex b = build_boundary(c);
  int fU1 = b.face_of(0, P().face("U1"));
  ExpansionRecord rec = expand_face(c, b, fU1);
  REQUIRE(rec.newTiles.size() == 2);
  // the new tiles repeat the T gluing of their bases across the flat
  int u0 = rec.newTiles[0], u1 = rec.newTiles[1];
  CHECK(c.tiles[u0].glue[P().face("T")].to == u1);
  CHECK(c.tiles[u0].label == w({"U1"}));
  CHECK(c.tiles[u1].label == normal_form(P(), w({"T", "U1"})));
  BoundaryComplex b2 = build_boundary(c);
  CHECK(b2.euler.genus == 1);  // expansion preserves genus
  c.check_coherent();
}

TEST_CASE("boundary dot export names faces") {
  TileComplex c = rank1_rose();
  BoundaryComplex b = build_boundary(c);
  std::string dot = boundary_dot(b);
  CHECK(dot.find("graph boundary") != std::string::npos);
  CHECK(dot.find("t0.U1") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);
}
