#pragma once

#include <map>
#include <utility>

#include "coxcell/complex.hpp"

namespace coxcell {

// A piece is one free face of one tile; pieces merge across flat edges into
// the faces of the boundary surface.  (tile, face) is stable across rebuilds.
struct PieceKey {
  int tile = -1;
  Face face = -1;
  bool operator<(const PieceKey& o) const {
    return tile != o.tile ? tile < o.tile : face < o.face;
  }
  bool operator==(const PieceKey& o) const { return tile == o.tile && face == o.face; }
};

// One tile's dihedral corner at one of its edges {a,b}, a < b.
struct Sector {
  int tile = -1;
  Face a = -1, b = -1;
  bool operator<(const Sector& o) const {
    if (tile != o.tile) return tile < o.tile;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool operator==(const Sector& o) const { return tile == o.tile && a == o.a && b == o.b; }
};

// Boundary edge of the tiling: a maximal open chain of 1..3 sectors (dihedral
// angle pi/2, pi, 3pi/2).  Interior edges are closed 4-cycles of sectors and
// do not appear here.
struct BEdge {
  std::vector<Sector> chain;  // geometric order along the chain
  Sector key;                 // least sector; stable identity across rebuilds
  int dihedral = 0;           // chain length: 1, 2 or 3 quarter-turns
  int piece0 = -1, piece1 = -1;  // pieces flanking the chain ends
  int face0 = -1, face1 = -1;    // their merged faces (equal iff flat)
  int v0 = -1, v1 = -1;       // endpoint vertex classes, key(v0) < key(v1)
  bool flat() const { return dihedral == 2; }
};

// One stop of a face's boundary walk: the walk traverses edge `edge` along
// side piece `piece`, entering at local corner `cin` and leaving at `cout`.
// `aligned` says whether the traversal runs v0 -> v1 of the edge.
struct WalkStep {
  int edge = -1;
  int piece = -1;
  bool aligned = false;
  int cin = -1, cout = -1;  // face-local corner classes
};

struct BFace {
  Face name = -1;              // all pieces of a face share the face letter
  std::vector<int> pieces;     // sorted piece indices
  std::vector<int> flats;      // interior flat edge ids
  std::vector<WalkStep> walk;  // cyclic boundary walk, deterministic
};

struct BoundaryComplex {
  const TileComplex* cx = nullptr;

  std::vector<PieceKey> pieces;  // sorted
  std::vector<int> pieceFace;    // piece -> face id
  std::vector<BEdge> edges;      // sorted by key
  std::vector<BFace> faces;      // ordered by least piece

  // Tiling vertex classes (union across gluings), indexed 0..nVert-1.
  int nVert = 0;
  std::vector<int> vertClass;                 // (tile * P.V() + vid) -> class
  std::vector<std::pair<int, int>> vertKey;   // class -> least (tile, vid)
  std::vector<char> vertOnBoundary;

  std::vector<std::vector<int>> faceAdj;    // sorted unique neighbor face ids
  std::vector<std::vector<int>> faceEdges;  // sorted boundary edge ids per face

  EulerCounts euler;

  std::map<Sector, int> edgeBySector;  // every chain sector -> edge id

  int piece_of(int tile, Face f) const;       // -1 if not a piece
  int edge_of(const Sector& s) const;         // -1 if interior/absent
  int face_of(int tile, Face f) const;        // -1 if not a piece
  int vclass(int tile, int vid) const { return vertClass[tile * cx->P().V() + vid]; }
  PieceKey face_key(int f) const { return pieces[faces[f].pieces.front()]; }
  std::string face_tag(int f) const;          // "t<tile>.<label>" of least piece
};

// Builds the boundary surface and validates the complex: sector chains and
// 4-cycles, vertex links, merged faces are embedded disks, Euler consistency.
// Throws InvalidGluing / DiskCheckFailed / InconsistentEuler.
BoundaryComplex build_boundary(const TileComplex& c);

// Euler-characteristic disk test for a union of closed faces inside the
// boundary surface: connected, chi == 1, and a single boundary circle with no
// pinched vertices.  Returns a human-readable failure reason, or "" if a disk.
std::string disk_defect(const BoundaryComplex& b, const std::vector<int>& faceIds);

// Pieces (tile, face-name) of every tile adjacent in the polyhedron to the
// named face: the ring of faces around a merged face after expansion.
std::vector<int> faces_adjacent_to(const BoundaryComplex& b, int faceId);
std::vector<int> faces_meeting(const BoundaryComplex& b, const std::vector<int>& faceIds);

// Expansion: glue a fresh layer of tiles over merged face `faceId`.
struct ExpansionRecord {
  int face = -1;            // expanded face id (in the pre-expansion complex)
  Face name = -1;           // its face letter
  std::vector<int> baseTiles;  // t_i, in piece order
  std::vector<int> newTiles;   // u_i, same order
};

// Adds the new tiles and gluings to `c` (labels NF(label(t_i) * s_h), sibling
// gluings inherited across the interior flats of the face) and certifies two
// disk conditions (DiskCheckFailed otherwise): the star of the block's outer
// face in the block's own boundary sphere, and the double star of the face
// letter within a single chamber's sphere.
ExpansionRecord expand_face(TileComplex& c, const BoundaryComplex& b, int faceId);

// DOT rendering of the boundary surface's face adjacency graph.
std::string boundary_dot(const BoundaryComplex& b);

}  // namespace coxcell
