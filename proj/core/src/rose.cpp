#include "coxcell/rose.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "coxcell/boundary.hpp"
#include "coxcell/errors.hpp"

namespace coxcell {

void validate_rose_spec(const RoseSpec& spec) {
  const Polyhedron& P = spec.P();
  if (spec.gens.empty()) fail(Err::FiniteOrderGenerator, "generator list is empty");
  for (int j = 0; j < int(spec.gens.size()); ++j) {
    const Word& w = spec.gens[j];
    for (Face f : w)
      if (f < 0 || f >= P.F())
        fail(Err::UnknownFace,
             "generator " + std::to_string(j + 1) + " uses face index " + std::to_string(f));
    std::string tag = "generator " + std::to_string(j + 1) + " = " + word_str(P, w);
    if (normal_form(P, w).size() != w.size())
      fail(Err::FiniteOrderGenerator, tag + " is not reduced as written");
    if (!cyclically_reduce(P, w).conjugator.empty())
      fail(Err::FiniteOrderGenerator, tag + " is not cyclically reduced");
    if (element_order(P, w) != Order::Infinite)
      fail(Err::FiniteOrderGenerator, tag + " has finite order");
  }

  // chain tiles are keyed by prefix normal forms; a clash would merge chains
  std::map<Word, std::pair<int, int>> seen;
  for (int j = 0; j < int(spec.gens.size()); ++j) {
    const Word& w = spec.gens[j];
    for (int len = 1; len < int(w.size()); ++len) {
      Word nf = normal_form(P, Word(w.begin(), w.begin() + len));
      if (nf.empty())
        fail(Err::PrefixCollision,
             "prefix of generator " + std::to_string(j + 1) + " is trivial");
      auto [it, fresh] = seen.emplace(nf, std::make_pair(j, len));
      if (!fresh)
        fail(Err::PrefixCollision,
             "prefix " + word_str(P, nf) + " shared by generators " +
                 std::to_string(it->second.first + 1) + " and " + std::to_string(j + 1));
    }
  }

  // every chain enters and leaves the base tile through its own face
  std::map<Face, std::string> port;
  for (int j = 0; j < int(spec.gens.size()); ++j) {
    const Word& w = spec.gens[j];
    for (Face f : {w.front(), w.back()}) {
      auto [it, fresh] = port.emplace(f, "generator " + std::to_string(j + 1));
      if (!fresh)
        fail(Err::PortCollision, "base face " + P.label(f) + " used by both " + it->second +
                                     " and generator " + std::to_string(j + 1));
    }
  }
}

namespace {

// Fills one 3pi/2 boundary edge: the chain tA -linkA- tM -linkM- tB gets a
// fourth chamber u glued across the free faces at both chain ends.  The
// decoration on the second gluing is forced by trivial holonomy around the
// now-interior edge.
void fill_corner(TileComplex& c, const BEdge& be) {
  const Sector& sA = be.chain.front();
  const Sector& sB = be.chain.back();
  int tA = sA.tile, tM = be.chain[1].tile, tB = sB.tile;
  Face freeA = !c.tiles[tA].glued(sA.a) ? sA.a : sA.b;
  Face linkA = freeA == sA.a ? sA.b : sA.a;
  Face freeB = !c.tiles[tB].glued(sB.a) ? sB.a : sB.b;
  if (freeB != linkA) throw std::logic_error("corner chain ends disagree on the face pair");

  FreeWord phiAM = c.tiles[tA].glue[linkA].phi;   // tA -> tM
  FreeWord phiMB = c.tiles[tM].glue[freeA].phi;   // tM -> tB
  FreeWord phi = free_mul(free_inv(phiMB), free_inv(phiAM));

  Word lbl = c.tiles[tA].label;
  lbl.push_back(freeA);
  int u = c.add_tile(lbl);
  c.add_gluing(tA, freeA, u, {});
  c.add_gluing(tB, freeB, u, phi);
}

}  // namespace

TileComplex build_rose(const RoseSpec& spec) {
  validate_rose_spec(spec);

  TileComplex c;
  c.poly = spec.poly;
  c.gens = spec.gens;
  c.add_tile({});  // base chamber

  int budget = 10 * int(spec.gens.size());
  for (int j = 0; j < int(spec.gens.size()); ++j) {
    const Word& w = spec.gens[j];
    budget += 10 * int(w.size());
    int prev = 0;
    for (int i = 0; i + 1 < int(w.size()); ++i) {
      Word prefix(w.begin(), w.begin() + i + 1);
      int u = c.add_tile(prefix);
      c.add_gluing(prev, w[i], u, {});
      prev = u;
    }
    c.add_gluing(prev, w.back(), 0, FreeWord{j + 1});  // closing face picks up x_j
  }

  // local convexity: fill 3pi/2 edges, least edge first, until none remain
  for (int used = 0;;) {
    BoundaryComplex b = build_boundary(c);
    const BEdge* target = nullptr;
    for (const BEdge& be : b.edges)
      if (be.dihedral == 3) {
        target = &be;
        break;
      }
    if (!target) break;
    if (used >= budget)
      fail(Err::ClosureBudgetExceeded,
           "boundary still concave after " + std::to_string(used) + " corner fills");
    fill_corner(c, *target);
    ++used;
  }
  return c;
}

}  // namespace coxcell
