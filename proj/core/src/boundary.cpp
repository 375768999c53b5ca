#include "coxcell/boundary.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cellmath.hpp"
#include "coxcell/errors.hpp"

namespace coxcell {

using cell::PolyTables;
using cell::UF;
using cell::tables;

int BoundaryComplex::piece_of(int tile, Face f) const {
  PieceKey k{tile, f};
  auto it = std::lower_bound(pieces.begin(), pieces.end(), k);
  if (it == pieces.end() || !(*it == k)) return -1;
  return int(it - pieces.begin());
}

int BoundaryComplex::edge_of(const Sector& s) const {
  auto it = edgeBySector.find(s);
  return it == edgeBySector.end() ? -1 : it->second;
}

int BoundaryComplex::face_of(int tile, Face f) const {
  int p = piece_of(tile, f);
  return p < 0 ? -1 : pieceFace[p];
}

std::string BoundaryComplex::face_tag(int f) const {
  PieceKey k = face_key(f);
  return "t" + std::to_string(k.tile) + "." + cx->P().label(k.face);
}

BoundaryComplex build_boundary(const TileComplex& c) {
  const Polyhedron& P = c.P();
  const int T = int(c.tiles.size());
  if (T == 0) fail(Err::InvalidGluing, "empty complex");
  c.check_coherent();
  const PolyTables pt = tables(P);
  const int PV = P.V(), PE = P.E(), PF = P.F();

  BoundaryComplex b;
  b.cx = &c;

  {  // the complex must be connected for the Euler bookkeeping to mean anything
    UF tuf(T);
    for (int t = 0; t < T; ++t)
      for (Face f = 0; f < PF; ++f)
        if (c.tiles[t].glued(f)) tuf.join(t, c.tiles[t].glue[f].to);
    for (int t = 0; t < T; ++t)
      if (tuf.find(t) != 0) fail(Err::InvalidGluing, "complex is not connected");
  }

  for (int t = 0; t < T; ++t)
    for (Face f = 0; f < PF; ++f)
      if (!c.tiles[t].glued(f)) b.pieces.push_back({t, f});
  const int NP = int(b.pieces.size());
  if (NP == 0) fail(Err::InvalidGluing, "complex has empty boundary");

  // vertex classes across gluings (name-preserving: same vertex id both sides)
  UF vuf(T * PV);
  for (int t = 0; t < T; ++t)
    for (Face f = 0; f < PF; ++f) {
      int u = c.tiles[t].glue[f].to;
      if (u > t)
        for (int v : pt.vatf[f]) vuf.join(t * PV + v, u * PV + v);
    }
  b.vertClass.assign(T * PV, -1);
  for (int i = 0; i < T * PV; ++i) {
    int r = vuf.find(i);
    if (b.vertClass[r] < 0) {
      b.vertClass[r] = b.nVert++;
      b.vertKey.push_back({r / PV, r % PV});
    }
    b.vertClass[i] = b.vertClass[r];
  }

  // edge classes across gluings
  UF euf(T * PE);
  for (int t = 0; t < T; ++t)
    for (Face f = 0; f < PF; ++f) {
      int u = c.tiles[t].glue[f].to;
      if (u > t)
        for (Face y : P.ring[f]) {
          int e = P.edge_id(f, y);
          euf.join(t * PE + e, u * PE + e);
        }
    }
  std::vector<std::vector<int>> emembers;
  {
    std::vector<int> classOf(T * PE, -1);
    for (int i = 0; i < T * PE; ++i) {
      int r = euf.find(i);
      if (classOf[r] < 0) {
        classOf[r] = int(emembers.size());
        emembers.emplace_back();
      }
      classOf[i] = classOf[r];
      emembers[classOf[i]].push_back(i);
    }
  }

  long long nEdgeClasses = long(emembers.size());
  auto sector_of = [&](int m) {
    return Sector{m / PE, P.edges[m % PE].first, P.edges[m % PE].second};
  };
  // link of member (t,e) via one of the two faces of e, or -1 when free
  auto link_via = [&](int m, Face f) -> int {
    int t = m / PE, e = m % PE;
    if (!c.tiles[t].glued(f)) return -1;
    return c.tiles[t].glue[f].to * PE + e;
  };

  std::vector<BEdge> raw;
  for (const auto& mem : emembers) {
    int freeEnds = 0;
    for (int m : mem) {
      int e = m % PE;
      if (link_via(m, P.edges[e].first) < 0) ++freeEnds;
      if (link_via(m, P.edges[e].second) < 0) ++freeEnds;
    }
    if (freeEnds == 0) {
      if (mem.size() != 4)
        fail(Err::InvalidGluing, "interior edge surrounded by " +
                                     std::to_string(mem.size()) + " tiles, expected 4");
      continue;  // interior edge; counted in nEdgeClasses already
    }
    if (freeEnds != 2)
      fail(Err::InvalidGluing, "boundary edge chain with " +
                                   std::to_string(freeEnds) + " free sides");
    if (mem.size() > 3)
      fail(Err::InvalidGluing, "boundary edge with dihedral angle over 3 quarter turns");

    // walk the chain from the end with the lesser sector
    std::vector<int> endsM;
    for (int m : mem) {
      int e = m % PE;
      int links = (link_via(m, P.edges[e].first) >= 0) +
                  (link_via(m, P.edges[e].second) >= 0);
      if (links < 2) endsM.push_back(m);
    }
    int start;
    if (mem.size() == 1) start = mem[0];
    else {
      if (endsM.size() != 2) fail(Err::InvalidGluing, "malformed boundary edge chain");
      start = sector_of(endsM[0]) < sector_of(endsM[1]) ? endsM[0] : endsM[1];
    }

    BEdge be;
    int cur = start, from = -1;
    for (size_t step = 0; step < mem.size(); ++step) {
      be.chain.push_back(sector_of(cur));
      int e = cur % PE;
      int nxt = -1;
      for (Face f : {P.edges[e].first, P.edges[e].second}) {
        int l = link_via(cur, f);
        if (l >= 0 && l != from) nxt = l;
      }
      from = cur;
      if (nxt < 0) break;
      cur = nxt;
    }
    if (be.chain.size() != mem.size())
      fail(Err::InvalidGluing, "malformed boundary edge chain");
    be.dihedral = int(be.chain.size());
    be.key = *std::min_element(be.chain.begin(), be.chain.end());
    raw.push_back(std::move(be));
  }

  std::sort(raw.begin(), raw.end(),
            [](const BEdge& x, const BEdge& y) { return x.key < y.key; });
  b.edges = std::move(raw);
  for (int i = 0; i < int(b.edges.size()); ++i)
    for (const Sector& s : b.edges[i].chain) b.edgeBySector[s] = i;

  // side pieces and endpoint classes per boundary edge; a chain end has
  // exactly one glued face among the sector's pair, the other is its side
  for (BEdge& be : b.edges) {
    const Sector& s0 = be.chain.front();
    const Sector& s1 = be.chain.back();
    Face f0, f1;
    if (be.dihedral == 1) {
      f0 = s0.a;
      f1 = s0.b;
    } else {
      f0 = !c.tiles[s0.tile].glued(s0.a) ? s0.a : s0.b;
      f1 = !c.tiles[s1.tile].glued(s1.a) ? s1.a : s1.b;
    }
    be.piece0 = b.piece_of(s0.tile, f0);
    be.piece1 = b.piece_of(s1.tile, f1);
    if (be.piece0 < 0 || be.piece1 < 0)
      throw std::logic_error("boundary edge side is not a free face");
    int e = P.edge_id(s0.a, s0.b);
    int c0 = b.vclass(s0.tile, pt.ends[e][0]);
    int c1 = b.vclass(s0.tile, pt.ends[e][1]);
    if (c0 == c1)
      fail(Err::InvalidGluing, "boundary edge with identified endpoints");
    be.v0 = std::min(c0, c1);
    be.v1 = std::max(c0, c1);
  }

  // merged faces: pieces joined across flat edges
  UF puf(NP);
  for (const BEdge& be : b.edges)
    if (be.flat()) puf.join(be.piece0, be.piece1);
  b.pieceFace.assign(NP, -1);
  for (int i = 0; i < NP; ++i) {
    int r = puf.find(i);
    if (b.pieceFace[r] < 0) {
      b.pieceFace[r] = int(b.faces.size());
      b.faces.emplace_back();
      b.faces.back().name = b.pieces[i].face;
    }
    b.pieceFace[i] = b.pieceFace[r];
    b.faces[b.pieceFace[i]].pieces.push_back(i);
    if (b.pieces[i].face != b.faces[b.pieceFace[i]].name)
      throw std::logic_error("merged face mixes face names");
  }
  const int NF = int(b.faces.size());
  b.faceEdges.resize(NF);
  b.faceAdj.resize(NF);
  for (int ei = 0; ei < int(b.edges.size()); ++ei) {
    BEdge& be = b.edges[ei];
    be.face0 = b.pieceFace[be.piece0];
    be.face1 = b.pieceFace[be.piece1];
    if (be.flat()) {
      if (be.face0 != be.face1) throw std::logic_error("flat edge between two faces");
      b.faces[be.face0].flats.push_back(ei);
      continue;
    }
    if (be.face0 == be.face1)
      fail(Err::InvalidGluing, "face adjacent to itself along an edge");
    b.faceEdges[be.face0].push_back(ei);
    b.faceEdges[be.face1].push_back(ei);
    b.faceAdj[be.face0].push_back(be.face1);
    b.faceAdj[be.face1].push_back(be.face0);
  }
  for (int f = 0; f < NF; ++f) {
    auto& a = b.faceAdj[f];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.faceEdges[f].begin(), b.faceEdges[f].end());
  }

  // per-face local corner classes, disk certification, boundary walk
  for (int fi = 0; fi < NF; ++fi) {
    BFace& F = b.faces[fi];
    const auto& vids = pt.vatf[F.name];
    const int deg = int(vids.size());
    auto vslot = [&](int vid) {
      return int(std::lower_bound(vids.begin(), vids.end(), vid) - vids.begin());
    };
    auto cornerIdx = [&](int piece, int vid) {
      int pos = int(std::lower_bound(F.pieces.begin(), F.pieces.end(), piece) -
                    F.pieces.begin());
      return pos * deg + vslot(vid);
    };
    UF cuf(int(F.pieces.size()) * deg);
    for (int ei : F.flats) {
      const BEdge& be = b.edges[ei];
      int e = P.edge_id(be.chain[0].a, be.chain[0].b);
      for (int v : pt.ends[e])
        cuf.join(cornerIdx(be.piece0, v), cornerIdx(be.piece1, v));
    }
    std::vector<int> cls(int(F.pieces.size()) * deg, -1);
    int nCls = 0;
    for (int i = 0; i < int(cls.size()); ++i) {
      int r = cuf.find(i);
      if (cls[r] < 0) cls[r] = nCls++;
      cls[i] = cls[r];
    }

    // slots: boundary edges of this face, with the side piece
    struct SlotRec {
      int edge, piece, c0, c1;  // local corner classes of the endpoints
    };
    std::vector<SlotRec> slots;
    for (int ei : b.faceEdges[fi]) {
      const BEdge& be = b.edges[ei];
      int piece = be.face0 == fi ? be.piece0 : be.piece1;
      int e = P.edge_id(be.chain[0].a, be.chain[0].b);
      int c0 = cls[cornerIdx(piece, pt.ends[e][0])];
      int c1 = cls[cornerIdx(piece, pt.ends[e][1])];
      if (c0 == c1) throw std::logic_error("slot with identified corners");
      slots.push_back({ei, piece, c0, c1});
    }
    if (slots.empty())
      fail(Err::DiskCheckFailed, "face " + b.face_tag(fi) + " has no boundary");

    long long chi = nCls - (long long)(F.flats.size() + slots.size()) +
                    (long long)F.pieces.size();
    if (chi != 1)
      fail(Err::DiskCheckFailed,
           "face " + b.face_tag(fi) + " has Euler characteristic " +
               std::to_string(chi));

    std::vector<std::vector<int>> atCorner(nCls);  // slot indices
    for (int si = 0; si < int(slots.size()); ++si) {
      atCorner[slots[si].c0].push_back(si);
      atCorner[slots[si].c1].push_back(si);
    }
    for (int cc = 0; cc < nCls; ++cc)
      if (!atCorner[cc].empty() && atCorner[cc].size() != 2)
        fail(Err::DiskCheckFailed,
             "face " + b.face_tag(fi) + " touches itself at a corner");

    // deterministic boundary walk: start at the least edge id, exit toward the
    // lesser corner class
    int startSi = 0;
    for (int si = 1; si < int(slots.size()); ++si)
      if (slots[si].edge < slots[startSi].edge) startSi = si;
    int curSi = startSi;
    int cin = std::max(slots[startSi].c0, slots[startSi].c1);
    std::vector<char> used(slots.size(), 0);
    for (size_t step = 0; step < slots.size(); ++step) {
      const SlotRec& s = slots[curSi];
      if (used[curSi])
        fail(Err::DiskCheckFailed,
             "face " + b.face_tag(fi) + " boundary is not a single circle");
      used[curSi] = 1;
      int cout = s.c0 == cin ? s.c1 : s.c0;
      // orientation of this traversal relative to the edge's canonical v0->v1
      const BEdge& be = b.edges[s.edge];
      int e = P.edge_id(be.chain[0].a, be.chain[0].b);
      int tIn = b.pieces[s.piece].tile;
      int rawIn = cls[cornerIdx(s.piece, pt.ends[e][0])] == cin ? pt.ends[e][0]
                                                                : pt.ends[e][1];
      bool aligned = b.vclass(tIn, rawIn) == be.v0;
      F.walk.push_back({s.edge, s.piece, aligned, cin, cout});
      // step to the other slot at cout
      const auto& pair = atCorner[cout];
      curSi = pair[0] == curSi ? pair[1] : pair[0];
      cin = cout;
    }
    if (F.walk.size() != slots.size() || cin != std::max(slots[startSi].c0, slots[startSi].c1))
      fail(Err::DiskCheckFailed,
           "face " + b.face_tag(fi) + " boundary is not a single circle");
    bool allUsed = std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
    if (!allUsed)
      fail(Err::DiskCheckFailed,
           "face " + b.face_tag(fi) + " boundary is not a single circle");
  }

  // boundary vertex links: single circle of pieces/edges around each class
  {
    UF iuf(NP * PV);  // corner instances (piece, vid)
    std::vector<char> seen(NP * PV, 0);
    for (const BEdge& be : b.edges) {
      int e = P.edge_id(be.chain[0].a, be.chain[0].b);
      for (int v : pt.ends[e]) {
        iuf.join(be.piece0 * PV + v, be.piece1 * PV + v);
        seen[be.piece0 * PV + v] = seen[be.piece1 * PV + v] = 1;
      }
    }
    b.vertOnBoundary.assign(b.nVert, 0);
    std::map<int, int> compOf;  // vertex class -> one instance component
    for (int p = 0; p < NP; ++p) {
      int t = b.pieces[p].tile;
      for (int v : pt.vatf[b.pieces[p].face]) {
        if (!seen[p * PV + v])
          throw std::logic_error("boundary corner with no incident boundary edge");
        int cls = b.vclass(t, v);
        b.vertOnBoundary[cls] = 1;
        int comp = iuf.find(p * PV + v);
        auto [it, fresh] = compOf.emplace(cls, comp);
        if (!fresh && it->second != comp)
          fail(Err::InvalidGluing, "pinched boundary vertex");
      }
    }
  }

  // Euler data
  EulerCounts ec;
  ec.V = b.nVert;
  ec.E = nEdgeClasses;
  ec.F2 = c.gluing_count() + NP;
  ec.T = T;
  ec.Vb = std::count(b.vertOnBoundary.begin(), b.vertOnBoundary.end(), 1);
  ec.Eb = long(b.edges.size());
  ec.Fb = NP;
  if (ec.chi_b() != 2 * ec.chi())
    fail(Err::InconsistentEuler,
         "surface Euler characteristic " + std::to_string(ec.chi_b()) +
             " != twice the solid characteristic " + std::to_string(ec.chi()));
  ec.genus = 1 - ec.chi();
  if (ec.genus < 0)
    fail(Err::InconsistentEuler, "negative genus " + std::to_string(ec.genus));
  if (ec.chi_b() != 2 - 2 * ec.genus)
    fail(Err::InconsistentEuler, "boundary is not a closed surface of genus " +
                                     std::to_string(ec.genus));
  b.euler = ec;

  {  // the boundary surface must be connected as well
    UF fuf(NF);
    for (int f = 0; f < NF; ++f)
      for (int g : b.faceAdj[f]) fuf.join(f, g);
    for (int f = 0; f < NF; ++f)
      if (fuf.find(f) != 0)
        fail(Err::InconsistentEuler, "boundary surface is not connected");
  }

  return b;
}

std::string disk_defect(const BoundaryComplex& b, const std::vector<int>& faceIds) {
  const Polyhedron& P = b.cx->P();
  const PolyTables pt = tables(P);
  const int PV = P.V();
  std::vector<char> inSet(b.faces.size(), 0);
  for (int f : faceIds) inSet[f] = 1;
  if (faceIds.empty()) return "empty face set";

  // cells of the union of closed faces
  std::vector<int> relevantEdges, boundaryEdges;
  for (int ei = 0; ei < int(b.edges.size()); ++ei) {
    const BEdge& be = b.edges[ei];
    int in = (inSet[be.face0] ? 1 : 0) + (inSet[be.face1] ? 1 : 0);
    if (be.flat()) {
      if (inSet[be.face0]) relevantEdges.push_back(ei);
      continue;
    }
    if (in == 0) continue;
    relevantEdges.push_back(ei);
    if (in == 1) boundaryEdges.push_back(ei);
  }
  if (boundaryEdges.empty()) return "no boundary (closed or empty)";

  long long nPieces = 0;
  for (int f : faceIds) nPieces += long(b.faces[f].pieces.size());
  std::set<int> vclasses;
  for (int ei : relevantEdges) {
    const BEdge& be = b.edges[ei];
    vclasses.insert(be.v0);
    vclasses.insert(be.v1);
  }
  long long chi = (long long)vclasses.size() - (long long)relevantEdges.size() + nPieces;

  // connectivity + vertex links, at the corner-instance level restricted to
  // the set: instances (piece, vid) for pieces of set faces, joined across
  // relevant edges whose both sides are in the set
  const int NP = int(b.pieces.size());
  UF iuf(NP * PV);
  std::vector<char> pieceIn(NP, 0);
  for (int f : faceIds)
    for (int p : b.faces[f].pieces) pieceIn[p] = 1;
  for (int ei : relevantEdges) {
    const BEdge& be = b.edges[ei];
    int e = P.edge_id(be.chain[0].a, be.chain[0].b);
    if (pieceIn[be.piece0] && pieceIn[be.piece1])
      for (int v : pt.ends[e]) iuf.join(be.piece0 * PV + v, be.piece1 * PV + v);
  }
  // every vertex class must meet the set in at most one instance component
  {
    std::map<int, int> compOf;
    for (int p = 0; p < NP; ++p) {
      if (!pieceIn[p]) continue;
      int t = b.pieces[p].tile;
      for (int v : pt.vatf[b.pieces[p].face]) {
        int cls = b.vclass(t, v);
        int comp = iuf.find(p * PV + v);
        auto [it, fresh] = compOf.emplace(cls, comp);
        if (!fresh && it->second != comp) return "pinched at a vertex";
      }
    }
  }
  // face connectivity through shared edges or shared vertices
  {
    UF fuf(int(b.faces.size()));
    for (int ei : relevantEdges) {
      const BEdge& be = b.edges[ei];
      if (!be.flat() && inSet[be.face0] && inSet[be.face1]) fuf.join(be.face0, be.face1);
    }
    std::map<int, int> byClass;  // vertex class -> one set face
    for (int f : faceIds)
      for (int p : b.faces[f].pieces) {
        int t = b.pieces[p].tile;
        for (int v : pt.vatf[b.pieces[p].face]) {
          auto [it, fresh] = byClass.emplace(b.vclass(t, v), f);
          if (!fresh) fuf.join(it->second, f);
        }
      }
    int root = fuf.find(faceIds[0]);
    for (int f : faceIds)
      if (fuf.find(f) != root) return "not connected";
  }
  if (chi != 1) return "Euler characteristic " + std::to_string(chi);

  // boundary circles: walk boundary edges, chained at instance components
  // carrying exactly two boundary-edge ends
  std::map<int, std::vector<int>> endsAt;  // instance component -> boundary edge ids
  for (int ei : boundaryEdges) {
    const BEdge& be = b.edges[ei];
    int e = P.edge_id(be.chain[0].a, be.chain[0].b);
    int p = pieceIn[be.piece0] ? be.piece0 : be.piece1;
    for (int v : pt.ends[e]) endsAt[iuf.find(p * PV + v)].push_back(ei);
  }
  for (auto& [k, es] : endsAt)
    if (es.size() != 2) return "boundary branches at a vertex";
  // count circles via union-find on boundary edges
  {
    std::map<int, int> idx;
    for (int i = 0; i < int(boundaryEdges.size()); ++i) idx[boundaryEdges[i]] = i;
    UF cuf(int(boundaryEdges.size()));
    for (auto& [k, es] : endsAt) cuf.join(idx[es[0]], idx[es[1]]);
    std::set<int> roots;
    for (int i = 0; i < int(boundaryEdges.size()); ++i) roots.insert(cuf.find(i));
    if (roots.size() != 1)
      return "boundary has " + std::to_string(roots.size()) + " circles";
  }
  return "";
}

std::vector<int> faces_adjacent_to(const BoundaryComplex& b, int faceId) {
  return b.faceAdj[faceId];
}

std::vector<int> faces_meeting(const BoundaryComplex& b, const std::vector<int>& faceIds) {
  const Polyhedron& P = b.cx->P();
  const PolyTables pt = tables(P);
  std::set<int> classes;
  std::vector<char> inSet(b.faces.size(), 0);
  for (int f : faceIds) inSet[f] = 1;
  for (int f : faceIds)
    for (int p : b.faces[f].pieces) {
      int t = b.pieces[p].tile;
      for (int v : pt.vatf[b.pieces[p].face]) classes.insert(b.vclass(t, v));
    }
  std::vector<int> out = faceIds;
  for (int f = 0; f < int(b.faces.size()); ++f) {
    if (inSet[f]) continue;
    bool meets = false;
    for (int p : b.faces[f].pieces) {
      int t = b.pieces[p].tile;
      for (int v : pt.vatf[b.pieces[p].face])
        if (classes.count(b.vclass(t, v))) { meets = true; break; }
      if (meets) break;
    }
    if (meets) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExpansionRecord expand_face(TileComplex& c, const BoundaryComplex& b, int faceId) {
  const Polyhedron& P = c.P();
  const BFace& F = b.faces[faceId];
  ExpansionRecord rec;
  rec.face = faceId;
  rec.name = F.name;
  const Face h = F.name;

  std::vector<int> pieceIndexInFace(b.pieces.size(), -1);
  for (int i = 0; i < int(F.pieces.size()); ++i) {
    pieceIndexInFace[F.pieces[i]] = i;
    rec.baseTiles.push_back(b.pieces[F.pieces[i]].tile);
  }
  for (int t : rec.baseTiles)
    rec.newTiles.push_back(c.add_tile(multiply(P, c.tiles[t].label, Word{h})));
  for (int i = 0; i < int(rec.baseTiles.size()); ++i)
    c.add_gluing(rec.baseTiles[i], h, rec.newTiles[i], {});

  // inherit the gluings across the interior flats of the face
  for (int ei : F.flats) {
    const BEdge& be = b.edges[ei];
    Face g = be.chain[0].a == h ? be.chain[0].b : be.chain[0].a;
    int i = pieceIndexInFace[be.piece0], j = pieceIndexInFace[be.piece1];
    int ti = rec.baseTiles[i];
    const Gluing& old = c.tiles[ti].glue[g];
    if (old.to != rec.baseTiles[j])
      throw std::logic_error("flat link gluing does not match face pieces");
    c.add_gluing(rec.newTiles[i], g, rec.newTiles[j], old.phi);
  }

  // disk certification of the new block's outer neighborhoods
  TileComplex block;
  block.poly = c.poly;
  block.gens = c.gens;
  std::vector<int> localOf(c.tiles.size(), -1);
  for (int i = 0; i < int(rec.newTiles.size()); ++i) {
    localOf[rec.newTiles[i]] = block.add_tile(c.tiles[rec.newTiles[i]].label);
  }
  for (int i = 0; i < int(rec.newTiles.size()); ++i) {
    int u = rec.newTiles[i];
    for (Face f = 0; f < P.F(); ++f) {
      const Gluing& g = c.tiles[u].glue[f];
      if (g.to >= 0 && localOf[g.to] >= 0 && g.to > u)
        block.add_gluing(localOf[u], f, localOf[g.to], g.phi);
    }
  }
  BoundaryComplex bb = build_boundary(block);
  int outer = bb.face_of(0, h);
  if (outer < 0) throw std::logic_error("expansion block lost its outer face");
  std::vector<int> n1 = faces_adjacent_to(bb, outer);
  n1.push_back(outer);
  std::sort(n1.begin(), n1.end());
  std::string d1 = disk_defect(bb, n1);
  if (!d1.empty())
    fail(Err::DiskCheckFailed, "expansion first neighborhood: " + d1);
  // second-neighborhood condition: within a single chamber's sphere, the
  // double star of the attached face must be a disk (a consequence of the
  // prismatic-circuit ban; certified per expansion)
  TileComplex one;
  one.poly = c.poly;
  one.add_tile({});
  BoundaryComplex ob = build_boundary(one);
  int hf = ob.face_of(0, h);
  std::vector<int> m1 = faces_adjacent_to(ob, hf);
  m1.push_back(hf);
  std::sort(m1.begin(), m1.end());
  std::vector<int> m2 = faces_meeting(ob, m1);
  std::string d2 = disk_defect(ob, m2);
  if (!d2.empty())
    fail(Err::DiskCheckFailed, "expansion second neighborhood: " + d2);
  return rec;
}

std::string boundary_dot(const BoundaryComplex& b) {
  std::ostringstream os;
  os << "graph boundary {\n  layout=neato;\n  node [shape=ellipse, fontsize=10];\n";
  for (int f = 0; f < int(b.faces.size()); ++f)
    os << "  f" << f << " [label=\"" << b.face_tag(f) << " (" << b.faces[f].pieces.size()
       << "p)\"];\n";
  for (const BEdge& be : b.edges) {
    if (be.flat()) continue;
    int f0 = std::min(be.face0, be.face1), f1 = std::max(be.face0, be.face1);
    os << "  f" << f0 << " -- f" << f1;
    if (be.dihedral == 3) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace coxcell
