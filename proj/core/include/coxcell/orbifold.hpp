#pragma once

#include <set>
#include <string>
#include <vector>

#include "coxcell/surgery.hpp"

namespace coxcell {

// Exact rational, kept tiny: values here are quarter-integers.
struct Rat {
  long long num = 0;
  long long den = 1;
  friend bool operator==(const Rat&, const Rat&) = default;
};
Rat make_rat(long long num, long long den);
std::string rat_str(const Rat& r);

// The boundary surface with mirrors laid over the annulus faces.  The
// complement splits into two planar components; S0 (the one holding the
// least face id) is the base of the product structure, and its corners are
// the boundary vertices where consecutive mirrored faces meet it.
struct MirroredOrbifold {
  const TileComplex* cx = nullptr;
  const BoundaryComplex* b = nullptr;
  std::vector<FaceAnnulus> annuli;
  std::vector<FreeWord> classes;  // per annulus: the class its core curve carries
  std::set<int> mirrored;
  std::vector<int> comp0, comp1;  // sorted face ids; comp0 is the base side
  // corners[i][j]: base-side vertex class between annulus face j and j+1
  std::vector<std::vector<int>> corners;
  // cornerEdges[i][j]: the boundary edge those two faces share at that corner
  std::vector<std::vector<int>> cornerEdges;
  int cornerCount = 0;
};

// Certifies the product structure: exactly two complement components, each a
// planar surface meeting every annulus in exactly one boundary circle.
// Throws NotTwoComponents, NotPlanar, CircleCountMismatch.
MirroredOrbifold attach_mirrors(const TileComplex& c, const BoundaryComplex& b,
                                const std::vector<FaceAnnulus>& annuli,
                                const CurveSystem& cs);

// chi(S0) - #corners/4, exact; throws NonNegativeEuler unless negative.
Rat orb_euler(const MirroredOrbifold& m);

// A generator with its reflection-group word.
struct PresGen {
  std::string name;
  Word image;
};

// Presentation of the mirrored base: free generators x_1..x_g (the classes
// the handles carry), one extra boundary class, and one mirror generator per
// annulus face; every relator's word image is verified to vanish.
struct OrbifoldPresentation {
  std::vector<PresGen> gens;
  std::vector<FreeWord> relators;  // over gens, letters +-(i+1)
  int freeRank = 0;                // g: gens[0..g-1] are the handle classes
  int mirrorStart = 0;             // first mirror generator index
  std::vector<int> circleOf;       // per gen: annulus index, -1 for non-mirrors
  std::vector<int> posOf;          // per gen: position along its circle, -1 otherwise
};

// Builds and verifies the presentation. Throws RelatorFailure.
OrbifoldPresentation orbifold_presentation(const MirroredOrbifold& m);

// The torsion-free surface subgroup in standard one-relator form, with the
// original free generators rewritten over the surface generators.
struct SurfaceSubgroupResult {
  int conePoints = 0;
  int index = 0;  // index in the orientation double cover: 2 or 4
  std::vector<PresGen> surfaceGens;  // a1,b1,a2,b2,...
  FreeWord relator;                  // [a1,b1][a2,b2]... over surfaceGens
  int genus = 0;
  std::vector<FreeWord> witnesses;  // x_j over surfaceGens
  int chiS0 = 0;
  Rat chiOrbX;   // chi(S0) - C/4
  Rat chiOrbXd;  // doubled
  int chiSigma = 0;
};

// Kernel of an explicit finite quotient that separates all corner groups,
// presented via Schreier rewriting and normalized to the standard surface
// relator. Throws HomomorphismSearchFailed, TorsionDetected, RelatorFailure,
// WitnessFailure.
SurfaceSubgroupResult surface_subgroup(const OrbifoldPresentation& p,
                                       const MirroredOrbifold& m);

// Substitutes the surface generators' words into each witness and checks the
// normal form against the input generator, bit for bit. Throws WitnessFailure.
void containment_witness(const SurfaceSubgroupResult& r, const Polyhedron& P,
                         const std::vector<Word>& gens);

}  // namespace coxcell
