#pragma once

#include <array>
#include <string>
#include <vector>

#include "coxcell/errors.hpp"

namespace coxcell {

using Face = int;

// Combinatorics of a simple 3-polytope whose faces all have at least five
// sides, with no prismatic 3- or 4-circuits.  Such a polytope supports a
// compact right-angled reflection group; every operation downstream leans on
// the derived adjacency/ring tables.
struct Polyhedron {
  std::string name;
  std::vector<std::string> labels;           // face index -> label
  std::vector<std::array<Face, 3>> verts;    // trivalent vertices, as given

  // derived by validation
  std::vector<std::vector<char>> adj;        // symmetric adjacency matrix
  std::vector<std::pair<Face, Face>> edges;  // (min,max), lexicographic
  std::vector<std::vector<Face>> ring;       // cyclic neighbor order per face

  int F() const { return static_cast<int>(labels.size()); }
  int V() const { return static_cast<int>(verts.size()); }
  int E() const { return static_cast<int>(edges.size()); }

  bool adjacent(Face a, Face b) const { return a != b && adj[a][b] != 0; }
  Face face(const std::string& label) const;      // throws UnknownFace
  Face face_or_neg(const std::string& label) const;
  int edge_id(Face a, Face b) const;              // -1 if not an edge
  int vertex_id(Face a, Face b, Face c) const;    // -1 if no such vertex
  const std::string& label(Face f) const { return labels[f]; }
};

// Validates the combinatorial axioms and fills in the derived tables.
// Throws: UnknownFace (bad label/reference), NonTrivalentVertex, MultiEdge,
// FaceTooSmall, EulerViolation, Disconnected, PrismaticCircuit.
Polyhedron make_polyhedron(std::string name, std::vector<std::string> labels,
                           const std::vector<std::array<std::string, 3>>& triples);

// Scans an adjacency matrix plus vertex triples for a prismatic circuit:
// either three pairwise-adjacent faces with no common vertex, or a 4-cycle of
// faces whose opposite pairs are non-adjacent.  Returns the offending faces,
// or an empty vector.  Exposed separately so the scan is testable on
// adjacency data that fails earlier validation stages.
std::vector<Face> find_prismatic_circuit(const std::vector<std::vector<char>>& adj,
                                         const std::vector<std::array<Face, 3>>& verts);

// JSON schema: { "name": str, "faces": [str...], "vertices": [[str,str,str]...] }
Polyhedron polyhedron_from_json(const std::string& text);
std::string polyhedron_to_json(const Polyhedron& p);

// The regular dodecahedron with the frozen labeling T, U1..U5, L1..L5, B.
const Polyhedron& builtin_dodecahedron();

}  // namespace coxcell
