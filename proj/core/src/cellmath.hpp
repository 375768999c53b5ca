#pragma once

#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "coxcell/polyhedron.hpp"

// Shared helpers for the cell-level analyses (boundary surface, curve
// systems, cut complements).  Internal to the library; not installed.

namespace coxcell::cell {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    p[b] = a;  // least index stays root, so class ids come out sorted by key
  }
};

struct PolyTables {
  std::vector<std::vector<int>> vatf;    // vertex ids at each face
  std::vector<std::array<int, 2>> ends;  // endpoint vertex ids per edge
};

inline PolyTables tables(const Polyhedron& P) {
  PolyTables t;
  t.vatf.resize(P.F());
  t.ends.assign(P.E(), {-1, -1});
  for (int v = 0; v < P.V(); ++v) {
    const auto& tri = P.verts[v];
    for (Face f : tri) t.vatf[f].push_back(v);
    int es[3] = {P.edge_id(tri[0], tri[1]), P.edge_id(tri[0], tri[2]),
                 P.edge_id(tri[1], tri[2])};
    for (int e : es) {
      if (t.ends[e][0] < 0) t.ends[e][0] = v;
      else t.ends[e][1] = v;
    }
  }
  return t;
}

}  // namespace coxcell::cell
