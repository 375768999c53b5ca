#pragma once

#include <map>
#include <set>
#include <vector>

#include "coxcell/boundary.hpp"

namespace coxcell {

// One normal arc of a curve: enters its face at crossing `cin`, leaves at
// `cout`.  `pin` is the piece just past the entry crossing; the arc's face is
// the merged face of `pin`, and the exit piece is derived from the exit
// crossing's edge.  (tile, face) and edge key sectors survive rebuilds of the
// boundary complex, so a curve system outlives expansions.
struct Arc {
  int cin = -1, cout = -1;
  PieceKey pin;
};

struct Curve {
  std::vector<Arc> arcs;  // cyclic, arcs[i].cout == arcs[i+1].cin
  FreeWord cls;           // free-group class traced along the curve
};

// Embedded normal curve system on the boundary surface.  Crossings are
// transverse intersections with pi/2 edges; `onEdge` lists each edge's
// crossings in v0 -> v1 order along the edge.
struct CurveSystem {
  std::vector<Curve> curves;
  std::map<int, Sector> place;                // crossing -> edge key sector
  std::map<Sector, std::vector<int>> onEdge;  // edge key -> crossings, v0->v1
  int next = 0;                               // next unused crossing id
};

// Shape summary of a union of closed merged faces inside the surface.
struct RegionProfile {
  bool connected = false;
  bool pinched = false;  // some vertex class meets the set in two corner fans
  long long chi = 0;
  int circles = 0;       // boundary circles (valid when not pinched)
  long long genus = 0;   // (2 - chi - circles) / 2 when connected, unpinched
};
RegionProfile region_profile(const BoundaryComplex& b, const std::vector<int>& faceIds);

// Builds the product curve system: g+1 disjoint embedded circles whose
// classes are x_1, ..., x_g and (x_1...x_g)^-1.  The system is the pushed-in
// boundary of a union B of merged faces whose letters avoid every generator
// letter; candidates for B are enumerated by (size, lex) and certified
// exactly (region shapes on both sides, class match, normality, complement
// shape).  Throws RoutingFailed when no candidate passes.
CurveSystem product_curves(const TileComplex& c, const BoundaryComplex& b);

// Full normal-position audit: every reference resolves on the current
// boundary (CurveNotOnBoundary), crossings pair up arcs one-to-one, arcs of a
// face have pairwise non-interleaved endpoints on its boundary walk, and
// consecutive arcs switch faces across their shared crossing (CurveNotNormal).
void validate_curves(const BoundaryComplex& b, const CurveSystem& cs);

// Piece where an arc leaves its face: the exit crossing's side piece lying in
// the arc's face.
PieceKey arc_exit(const BoundaryComplex& b, const CurveSystem& cs, const Arc& a);

// Free-group transport between two pieces of one merged face: ordered product
// of gate decorations along the flat edges.  Path independence inside the
// face is asserted.
FreeWord face_transport(const BoundaryComplex& b, int faceId, int fromPiece, int toPiece);

// Class of a curve: product of the per-arc transports from entry to exit
// piece.  Crossings pick up nothing (both sides of a pi/2 edge lie in one
// tile).
FreeWord curve_class(const BoundaryComplex& b, const CurveSystem& cs, const Curve& cu);

// Result of cutting the surface along the curve system.
struct ComplementSide {
  long long chi = 0;
  int circles = 0;       // boundary circles of this side
  long long genus = 0;
  std::set<int> faces;   // merged faces contributing at least one region
  std::vector<std::pair<int, int>> curveSides;  // (curve, 0=left/1=right)
};
struct ComplementSummary {
  std::vector<ComplementSide> sides;  // ordered by least contributing face
};
ComplementSummary cut_complement(const BoundaryComplex& b, const CurveSystem& cs);

}  // namespace coxcell
