#pragma once

#include "coxcell/coxeter.hpp"
#include "coxcell/freewords.hpp"

namespace coxcell {

// Crossing decoration: passing from this tile through face f lands in tile
// `to`; `phi` is the element of the abstract free group (on the handle
// generators) picked up by the crossing.  The reverse gluing stores the
// inverse word.
struct Gluing {
  int to = -1;
  FreeWord phi;
};

struct Tile {
  Word label;
  std::vector<Gluing> glue;  // indexed by face
  bool glued(Face f) const { return glue[f].to >= 0; }
};

// A complex of reflection-chamber copies: tiles are copies of the solid
// polyhedron, glued along whole faces in a name-preserving way.  Tile labels
// live in the reflection group; the invariant tying labels, gluings and
// decorations together is
//     NF(label(t) * s_f) == NF(image(phi) * label(u))
// for every gluing t -f-> u.
struct TileComplex {
  const Polyhedron* poly = nullptr;
  std::vector<Word> gens;  // images of the free generators
  std::vector<Tile> tiles;

  const Polyhedron& P() const { return *poly; }
  int add_tile(Word label);
  void add_gluing(int t, Face f, int u, const FreeWord& phi);
  void check_coherent() const;  // throws InvalidGluing on any broken invariant
  int gluing_count() const;
};

struct EulerCounts {
  long long V = 0, E = 0, F2 = 0, T = 0;  // cells of the glued 3-complex
  long long Vb = 0, Eb = 0, Fb = 0;       // boundary surface cells
  long long chi() const { return V - E + F2 - T; }
  long long chi_b() const { return Vb - Eb + Fb; }
  long long genus = 0;  // of the boundary surface (= 1 - chi)
};

// Computes and cross-checks the Euler data (throws InconsistentEuler).
EulerCounts euler_invariants(const TileComplex& c);

}  // namespace coxcell
