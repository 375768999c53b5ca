#pragma once

#include "coxcell/complex.hpp"

namespace coxcell {

// Input for the handlebody construction: a free basis given as words over
// the polyhedron's faces.
struct RoseSpec {
  const Polyhedron* poly = nullptr;
  std::vector<Word> gens;

  const Polyhedron& P() const { return *poly; }
};

// Word-level invariants of the spec:
//   - every generator reduced as written, cyclically reduced, infinite order
//     (FiniteOrderGenerator otherwise);
//   - normal forms of all proper prefixes pairwise distinct and nontrivial
//     (PrefixCollision);
//   - the base tile faces used by the chains (first letter of each word,
//     last letter of each word) pairwise distinct (PortCollision).
void validate_rose_spec(const RoseSpec& spec);

// Builds the handlebody: base tile labeled by the identity, one chain of
// proper-prefix tiles per generator, glued through the base in a cycle that
// picks up the free generator on the closing face.  Afterwards every 3pi/2
// boundary edge is filled with the fourth chamber around it until the
// boundary is locally convex; filling past 10 * (g + sum |w_j|) new tiles
// throws ClosureBudgetExceeded.
TileComplex build_rose(const RoseSpec& spec);

}  // namespace coxcell
