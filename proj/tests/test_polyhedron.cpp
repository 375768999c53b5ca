#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>

#include "coxcell/polyhedron.hpp"
#include "doctest.h"

using namespace coxcell;

#define CHECK_ERR(expr, err)                     \
  do {                                           \
    try {                                        \
      (void)(expr);                              \
      FAIL_CHECK("expected " << err_name(err));  \
    } catch (const Error& e) {                   \
      CHECK(e.code == err);                      \
    }                                            \
  } while (0)

namespace {

// n-gonal barrel: two n-gon caps and 2n pentagons.  n=5 gives the dodecahedron.
std::vector<std::array<std::string, 3>> barrel_triples(int n) {
  auto U = [n](int i) { return "U" + std::to_string((i - 1) % n + 1); };
  auto D = [n](int i) { return "D" + std::to_string((i - 1) % n + 1); };
  std::vector<std::array<std::string, 3>> t;
  for (int i = 1; i <= n; ++i) t.push_back({"T", U(i), U(i + 1)});
  for (int i = 1; i <= n; ++i) t.push_back({U(i), U(i + 1), D(i + 1)});
  for (int i = 1; i <= n; ++i) t.push_back({D(i), D(i + 1), U(i)});
  for (int i = 1; i <= n; ++i) t.push_back({"B", D(i), D(i + 1)});
  return t;
}

std::vector<std::string> barrel_labels(int n) {
  std::vector<std::string> l = {"T"};
  for (int i = 1; i <= n; ++i) l.push_back("U" + std::to_string(i));
  for (int i = 1; i <= n; ++i) l.push_back("D" + std::to_string(i));
  l.push_back("B");
  return l;
}

std::vector<std::array<std::string, 3>> cube_triples() {
  std::vector<std::array<std::string, 3>> t;
  for (std::string tb : {"T", "B"})
    for (std::string ns : {"N", "S"})
      for (std::string ew : {"E", "W"}) t.push_back({tb, ns, ew});
  return t;
}

// The 7-hexagon torus map: every pair of faces shares exactly one edge, all
// local checks pass, but V-E+F = 0.
std::vector<std::array<std::string, 3>> torus_triples() {
  auto f = [](int i) { return "F" + std::to_string((i % 7 + 7) % 7); };
  std::vector<std::array<std::string, 3>> t;
  for (int i = 0; i < 7; ++i) t.push_back({f(i), f(i + 1), f(i + 3)});
  for (int i = 0; i < 7; ++i) t.push_back({f(i), f(i + 2), f(i + 3)});
  return t;
}

std::set<std::string> neighbor_labels(const Polyhedron& p, const std::string& f) {
  std::set<std::string> out;
  Face a = p.face(f);
  for (Face b = 0; b < p.F(); ++b)
    if (p.adjacent(a, b)) out.insert(p.labels[b]);
  return out;
}

}  // namespace

TEST_CASE("builtin dodecahedron combinatorics") {
  const Polyhedron& p = builtin_dodecahedron();
  CHECK(p.F() == 12);
  CHECK(p.V() == 20);
  CHECK(p.E() == 30);
  CHECK(neighbor_labels(p, "T") == std::set<std::string>{"U1", "U2", "U3", "U4", "U5"});
  CHECK(neighbor_labels(p, "U1") == std::set<std::string>{"T", "U2", "U5", "L1", "L2"});
  CHECK(neighbor_labels(p, "L1") == std::set<std::string>{"B", "L2", "L5", "U1", "U5"});
  CHECK(neighbor_labels(p, "B") == std::set<std::string>{"L1", "L2", "L3", "L4", "L5"});
  CHECK_FALSE(p.adjacent(p.face("T"), p.face("B")));
  CHECK_FALSE(p.adjacent(p.face("U1"), p.face("L3")));  // the genus-2 generator pair
  for (Face f = 0; f < p.F(); ++f) CHECK(p.ring[f].size() == 5);
  // Ring of T is the upper band in cyclic order.
  std::set<std::string> ringT;
  for (Face f : p.ring[p.face("T")]) ringT.insert(p.labels[f]);
  CHECK(ringT == std::set<std::string>{"U1", "U2", "U3", "U4", "U5"});
  CHECK(p.vertex_id(p.face("T"), p.face("U1"), p.face("U2")) >= 0);
  CHECK(p.vertex_id(p.face("T"), p.face("U1"), p.face("U3")) < 0);
}

TEST_CASE("dodecahedron equals the 5-barrel") {
  auto labels = barrel_labels(5);
  Polyhedron q = make_polyhedron("pentabarrel", labels, barrel_triples(5));
  const Polyhedron& p = builtin_dodecahedron();
  CHECK(q.V() == p.V());
  CHECK(q.E() == p.E());
  // U-D labeling here maps to U-L labeling in the builtin.
  CHECK(neighbor_labels(q, "U1") == std::set<std::string>{"T", "U2", "U5", "D1", "D2"});
}

TEST_CASE("hexagonal barrel validates") {
  Polyhedron q = make_polyhedron("hexbarrel", barrel_labels(6), barrel_triples(6));
  CHECK(q.F() == 14);
  CHECK(q.V() == 24);
  CHECK(q.E() == 36);
  CHECK(q.ring[q.face("T")].size() == 6);
  CHECK(q.ring[q.face("U1")].size() == 5);
  CHECK(neighbor_labels(q, "U1") == std::set<std::string>{"T", "U2", "U6", "D1", "D2"});
}

TEST_CASE("json round trip is byte stable") {
  const Polyhedron& p = builtin_dodecahedron();
  std::string s1 = polyhedron_to_json(p);
  Polyhedron q = polyhedron_from_json(s1);
  std::string s2 = polyhedron_to_json(q);
  CHECK(s1 == s2);
  CHECK(q.E() == 30);
}

TEST_CASE("cube fails with FaceTooSmall") {
  CHECK_ERR(make_polyhedron("cube", {"T", "B", "N", "S", "E", "W"}, cube_triples()),
            Err::FaceTooSmall);
}

TEST_CASE("prismatic circuit scan finds the cube waist") {
  // Feed the scan the cube's adjacency directly (validation would stop at the
  // face size check long before reaching it).
  std::vector<std::string> labels = {"T", "B", "N", "S", "E", "W"};
  std::vector<std::array<Face, 3>> verts;
  std::vector<std::vector<char>> adj(6, std::vector<char>(6, 0));
  auto idx = [&](const std::string& s) {
    return static_cast<Face>(std::find(labels.begin(), labels.end(), s) - labels.begin());
  };
  for (const auto& t : cube_triples()) {
    std::array<Face, 3> v = {idx(t[0]), idx(t[1]), idx(t[2])};
    verts.push_back(v);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) adj[v[i]][v[j]] = 1;
  }
  std::vector<Face> circ = find_prismatic_circuit(adj, verts);
  REQUIRE(circ.size() == 4);
  // Any reported quadruple must be a genuine prismatic ring (the cube has
  // three: T-N-B-S, T-E-B-W, N-E-S-W).
  CHECK(adj[circ[0]][circ[1]]);
  CHECK(adj[circ[1]][circ[2]]);
  CHECK(adj[circ[2]][circ[3]]);
  CHECK(adj[circ[3]][circ[0]]);
  CHECK_FALSE(adj[circ[0]][circ[2]]);
  CHECK_FALSE(adj[circ[1]][circ[3]]);

  // A triangle of faces with no vertex listed is a prismatic 3-circuit.
  std::vector<std::vector<char>> tri_adj(3, std::vector<char>(3, 1));
  for (int i = 0; i < 3; ++i) tri_adj[i][i] = 0;
  std::vector<Face> tri = find_prismatic_circuit(tri_adj, {});
  REQUIRE(tri.size() == 3);
  CHECK(tri == std::vector<Face>{0, 1, 2});
  // The dodecahedron itself is circuit-free.
  const Polyhedron& d = builtin_dodecahedron();
  CHECK(find_prismatic_circuit(d.adj, d.verts).empty());
}

TEST_CASE("torus map fails Euler") {
  std::vector<std::string> labels;
  for (int i = 0; i < 7; ++i) labels.push_back("F" + std::to_string(i));
  CHECK_ERR(make_polyhedron("torus7", labels, torus_triples()), Err::EulerViolation);
}

TEST_CASE("torus plus dodecahedron is disconnected") {
  // chi = 0 + 2 passes the global Euler count; connectivity catches it.
  std::vector<std::string> labels;
  for (int i = 0; i < 7; ++i) labels.push_back("F" + std::to_string(i));
  auto triples = torus_triples();
  const Polyhedron& d = builtin_dodecahedron();
  for (const auto& l : d.labels) labels.push_back(l);
  for (const auto& v : d.verts)
    triples.push_back({d.labels[v[0]], d.labels[v[1]], d.labels[v[2]]});
  CHECK_ERR(make_polyhedron("mixed", labels, triples), Err::Disconnected);
}

TEST_CASE("reference errors") {
  CHECK_ERR(make_polyhedron("dup", {"A", "A"}, {}), Err::UnknownFace);
  CHECK_ERR(make_polyhedron("bad", {"A", "B", "C"}, {{"A", "B", "X"}}), Err::UnknownFace);
  CHECK_ERR(make_polyhedron("rep", {"A", "B", "C"}, {{"A", "B", "B"}}),
            Err::NonTrivalentVertex);
}

TEST_CASE("single shared vertex reports MultiEdge") {
  const Polyhedron& d = builtin_dodecahedron();
  std::vector<std::array<std::string, 3>> triples;
  for (const auto& v : d.verts)
    triples.push_back({d.labels[v[0]], d.labels[v[1]], d.labels[v[2]]});
  triples.erase(triples.begin());  // drop {T,U1,U2}: T-U1 now share one vertex
  CHECK_ERR(make_polyhedron("torn", d.labels, triples), Err::MultiEdge);
}
