#include "coxcell/curves.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "cellmath.hpp"
#include "coxcell/errors.hpp"

namespace coxcell {

using cell::PolyTables;
using cell::UF;
using cell::tables;

RegionProfile region_profile(const BoundaryComplex& b, const std::vector<int>& faceIds) {
  const Polyhedron& P = b.cx->P();
  const PolyTables pt = tables(P);
  const int PV = P.V();
  RegionProfile r;
  if (faceIds.empty()) return r;

  std::vector<char> inSet(b.faces.size(), 0);
  for (int f : faceIds) inSet[f] = 1;

  std::vector<int> relevant, boundary;
  for (int ei = 0; ei < int(b.edges.size()); ++ei) {
    const BEdge& be = b.edges[ei];
    if (be.flat()) {
      if (inSet[be.face0]) relevant.push_back(ei);
      continue;
    }
    int in = (inSet[be.face0] ? 1 : 0) + (inSet[be.face1] ? 1 : 0);
    if (in == 0) continue;
    relevant.push_back(ei);
    if (in == 1) boundary.push_back(ei);
  }

  long long nPieces = 0;
  for (int f : faceIds) nPieces += (long long)b.faces[f].pieces.size();
  std::set<int> vcl;
  for (int ei : relevant) {
    vcl.insert(b.edges[ei].v0);
    vcl.insert(b.edges[ei].v1);
  }
  r.chi = (long long)vcl.size() - (long long)relevant.size() + nPieces;

  // corner instances joined across region-internal edges: the fans of the set
  const int NP = int(b.pieces.size());
  UF iuf(NP * PV);
  std::vector<char> pieceIn(NP, 0);
  for (int f : faceIds)
    for (int p : b.faces[f].pieces) pieceIn[p] = 1;
  for (int ei : relevant) {
    const BEdge& be = b.edges[ei];
    if (!pieceIn[be.piece0] || !pieceIn[be.piece1]) continue;
    int e = P.edge_id(be.chain[0].a, be.chain[0].b);
    for (int v : pt.ends[e]) iuf.join(be.piece0 * PV + v, be.piece1 * PV + v);
  }
  {  // pinch: a vertex class meeting the set in two separate corner fans
    std::map<int, int> compOf;
    for (int p = 0; p < NP; ++p) {
      if (!pieceIn[p]) continue;
      int t = b.pieces[p].tile;
      for (int v : pt.vatf[b.pieces[p].face]) {
        auto [it, fresh] = compOf.emplace(b.vclass(t, v), iuf.find(p * PV + v));
        if (!fresh && it->second != iuf.find(p * PV + v)) r.pinched = true;
      }
    }
  }
  {  // connectivity through shared edges or shared vertices
    UF fuf(int(b.faces.size()));
    for (int ei : relevant) {
      const BEdge& be = b.edges[ei];
      if (!be.flat() && inSet[be.face0] && inSet[be.face1]) fuf.join(be.face0, be.face1);
    }
    std::map<int, int> byClass;
    for (int f : faceIds)
      for (int p : b.faces[f].pieces) {
        int t = b.pieces[p].tile;
        for (int v : pt.vatf[b.pieces[p].face]) {
          auto [it, fresh] = byClass.emplace(b.vclass(t, v), f);
          if (!fresh) fuf.join(it->second, f);
        }
      }
    r.connected = true;
    int root = fuf.find(faceIds[0]);
    for (int f : faceIds)
      if (fuf.find(f) != root) r.connected = false;
  }

  // boundary circles: boundary edges chained at corner-fan components
  std::map<int, std::vector<int>> endsAt;
  for (int ei : boundary) {
    const BEdge& be = b.edges[ei];
    int e = P.edge_id(be.chain[0].a, be.chain[0].b);
    int p = pieceIn[be.piece0] ? be.piece0 : be.piece1;
    for (int v : pt.ends[e]) endsAt[iuf.find(p * PV + v)].push_back(ei);
  }
  for (auto& [k, es] : endsAt)
    if (es.size() != 2) r.pinched = true;
  if (!r.pinched && !boundary.empty()) {
    std::map<int, int> idx;
    for (int i = 0; i < int(boundary.size()); ++i) idx[boundary[i]] = i;
    UF cuf(int(boundary.size()));
    for (auto& [k, es] : endsAt) cuf.join(idx[es[0]], idx[es[1]]);
    std::set<int> roots;
    for (int i = 0; i < int(boundary.size()); ++i) roots.insert(cuf.find(i));
    r.circles = int(roots.size());
  }
  if (r.connected && !r.pinched) {
    long long num = 2 - r.chi - r.circles;
    r.genus = (num % 2 == 0) ? num / 2 : -1;
  }
  return r;
}

namespace {

// The glued face of a flat edge seen from tile `t`, and its gate word.
FreeWord flat_gate(const TileComplex& c, const BEdge& be, int fromTile) {
  const Sector& s = be.chain.front().tile == fromTile ? be.chain.front() : be.chain.back();
  if (s.tile != fromTile) throw std::logic_error("flat edge does not touch tile");
  Face f = c.tiles[fromTile].glued(s.a) ? s.a : s.b;
  return c.tiles[fromTile].glue[f].phi;
}

// Pushed-in boundary of the union of pieces named in the bottom set.  Walks
// every boundary circle of the set region at distance epsilon inside it,
// recording a crossing each time the strand passes a pi/2 edge whose both
// sides are bottom pieces.  Returns nullopt when some circle never crosses.
std::optional<CurveSystem> extract_boundary_curves(const TileComplex& c,
                                                   const BoundaryComplex& b,
                                                   const std::vector<char>& inS) {
  const Polyhedron& P = c.P();
  const PolyTables pt = tables(P);

  auto inB = [&](int piece) { return inS[b.pieces[piece].face] != 0; };

  std::vector<int> items;  // pi/2 edges with exactly one side in the set
  for (int ei = 0; ei < int(b.edges.size()); ++ei) {
    const BEdge& be = b.edges[ei];
    if (be.dihedral == 3)
      throw std::logic_error("curve extraction on a locally concave complex");
    if (be.flat()) continue;
    if (inB(be.piece0) != inB(be.piece1)) items.push_back(ei);
  }
  if (items.empty()) return std::nullopt;

  CurveSystem cs;
  std::map<std::pair<int, int>, int> crossAt;  // (edge id, end class) -> id
  std::set<int> itemUsed;

  for (int e0 : items) {
    if (itemUsed.count(e0)) continue;
    itemUsed.insert(e0);

    // strand state: just traversed an item toward class C, inside corner
    // piece `p` at raw vertex `v`, having arrived along sector `in`
    const BEdge& start = b.edges[e0];
    int p = inB(start.piece0) ? start.piece0 : start.piece1;
    int C = start.v1;
    int pe = P.edge_id(start.chain[0].a, start.chain[0].b);
    int v = b.vclass(start.chain[0].tile, pt.ends[pe][0]) == C ? pt.ends[pe][0]
                                                               : pt.ends[pe][1];
    Sector in = start.chain[0];

    std::vector<std::pair<int, PieceKey>> hits;  // (crossing, entered piece)
    long guard = 8 * long(b.edges.size()) + 64;
    bool closed = false;
    while (!closed) {
      if (--guard < 0) throw std::logic_error("curve strand did not close");
      // rotate the corner fan at (C, v) away from `in`, staying in the set
      int t = b.pieces[p].tile;
      Face a = b.pieces[p].face;
      const auto& tri = P.verts[v];
      Sector nxt{-1, -1, -1};
      bool sawIn = false;
      for (Face y : tri) {
        if (y == a) continue;
        Sector s{t, std::min(a, y), std::max(a, y)};
        if (s == in) sawIn = true;
        else nxt = s;
      }
      if (!sawIn || nxt.tile < 0)
        throw std::logic_error("corner fan lost its bearings");
      int nid = b.edge_of(nxt);
      if (nid < 0) throw std::logic_error("fan sector off the boundary");
      const BEdge& ne = b.edges[nid];
      if (ne.dihedral == 1) {
        int q = ne.piece0 == p ? ne.piece1 : ne.piece0;
        if (ne.piece0 != p && ne.piece1 != p)
          throw std::logic_error("fan edge misses its corner piece");
        if (inB(q)) {  // transverse crossing near this end of the edge
          auto [it, fresh] = crossAt.emplace(std::make_pair(nid, C), cs.next);
          if (!fresh) throw std::logic_error("edge end crossed twice");
          cs.place[cs.next] = ne.key;
          hits.push_back({cs.next, b.pieces[q]});
          ++cs.next;
          p = q;
          in = nxt;
          continue;
        }
        // exit item: run parallel to it toward its far end
        if (nid == e0 && C == b.edges[e0].v0) {
          closed = true;  // back to the start, heading the way we began
          continue;
        }
        if (itemUsed.count(nid))
          throw std::logic_error("boundary item traversed twice");
        itemUsed.insert(nid);
        C = ne.v0 == C ? ne.v1 : ne.v0;
        int npe = P.edge_id(nxt.a, nxt.b);
        v = pt.ends[npe][0] == v ? pt.ends[npe][1] : pt.ends[npe][0];
        in = nxt;
        continue;
      }
      if (ne.dihedral != 2) throw std::logic_error("unexpected dihedral in fan");
      // flat interior to the set: slide into the neighbor tile's copy
      const Sector& so = ne.chain.front() == nxt ? ne.chain.back() : ne.chain.front();
      int q = b.piece_of(so.tile, a);
      if (q < 0) throw std::logic_error("flat neighbor piece missing");
      p = q;
      in = so;
    }
    if (hits.empty()) return std::nullopt;  // strand inside one face: degenerate

    Curve cu;
    for (int i = 0; i < int(hits.size()); ++i) {
      Arc arc;
      arc.cin = hits[i].first;
      arc.cout = hits[(i + 1) % hits.size()].first;
      arc.pin = hits[i].second;
      cu.arcs.push_back(arc);
    }
    cs.curves.push_back(std::move(cu));
  }

  // per-edge order: the near-v0 crossing precedes the near-v1 crossing
  std::map<int, std::array<int, 2>> perEdge;
  for (auto& [key, id] : crossAt) {
    auto it = perEdge.find(key.first);
    if (it == perEdge.end())
      it = perEdge.emplace(key.first, std::array<int, 2>{-1, -1}).first;
    it->second[key.second == b.edges[key.first].v0 ? 0 : 1] = id;
  }
  for (auto& [eid2, pair] : perEdge) {
    std::vector<int>& lst = cs.onEdge[b.edges[eid2].key];
    for (int id : pair)
      if (id >= 0) lst.push_back(id);
  }
  return cs;
}

int face_of_arc(const BoundaryComplex& b, const Arc& a) {
  int p = b.piece_of(a.pin.tile, a.pin.face);
  if (p < 0)
    fail(Err::CurveNotOnBoundary, "arc entry piece t" + std::to_string(a.pin.tile) +
                                      "." + b.cx->P().label(a.pin.face) +
                                      " is not on the boundary");
  return b.pieceFace[p];
}

int edge_of_crossing(const BoundaryComplex& b, const CurveSystem& cs, int id) {
  auto it = cs.place.find(id);
  if (it == cs.place.end())
    fail(Err::CurveNotOnBoundary, "crossing " + std::to_string(id) + " is unplaced");
  int ei = b.edge_of(it->second);
  if (ei < 0 || b.edges[ei].dihedral != 1)
    fail(Err::CurveNotOnBoundary,
         "crossing " + std::to_string(id) + " sits on a vanished edge");
  return ei;
}

void reverse_curve(const BoundaryComplex& b, const CurveSystem& cs, Curve& cu) {
  std::vector<Arc> rev;
  for (int i = int(cu.arcs.size()) - 1; i >= 0; --i) {
    const Arc& a = cu.arcs[i];
    Arc r;
    r.cin = a.cout;
    r.cout = a.cin;
    r.pin = arc_exit(b, cs, a);
    rev.push_back(r);
  }
  cu.arcs = std::move(rev);
}

}  // namespace

PieceKey arc_exit(const BoundaryComplex& b, const CurveSystem& cs, const Arc& a) {
  int fi = face_of_arc(b, a);
  const BEdge& oe = b.edges[edge_of_crossing(b, cs, a.cout)];
  int q = oe.face0 == fi ? oe.piece0 : oe.face1 == fi ? oe.piece1 : -1;
  if (q < 0)
    fail(Err::CurveNotOnBoundary, "exit crossing of an arc does not border its face");
  return b.pieces[q];
}

FreeWord face_transport(const BoundaryComplex& b, int faceId, int fromPiece, int toPiece) {
  const TileComplex& c = *b.cx;
  const BFace& F = b.faces[faceId];
  std::map<int, FreeWord> acc;
  acc[fromPiece] = {};
  std::vector<int> queue{fromPiece};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int p = queue[qi];
    for (int ei : F.flats) {
      const BEdge& be = b.edges[ei];
      if (be.piece0 != p && be.piece1 != p) continue;
      int q = be.piece0 == p ? be.piece1 : be.piece0;
      FreeWord w = free_mul(acc[p], flat_gate(c, be, b.pieces[p].tile));
      auto [it, fresh] = acc.emplace(q, w);
      if (fresh) queue.push_back(q);
      else if (!(it->second == w))
        throw std::logic_error("face transport is path dependent");
    }
  }
  auto it = acc.find(toPiece);
  if (it == acc.end())
    fail(Err::CurveNotOnBoundary, "transport endpoints in different faces");
  return it->second;
}

FreeWord curve_class(const BoundaryComplex& b, const CurveSystem& cs, const Curve& cu) {
  FreeWord cls;
  for (const Arc& a : cu.arcs) {
    int fi = face_of_arc(b, a);
    int pin = b.piece_of(a.pin.tile, a.pin.face);
    PieceKey outKey = arc_exit(b, cs, a);
    int pout = b.piece_of(outKey.tile, outKey.face);
    cls = free_mul(cls, face_transport(b, fi, pin, pout));
  }
  return cls;
}

void validate_curves(const BoundaryComplex& b, const CurveSystem& cs) {
  // placement table is internally consistent and on the current boundary
  std::map<int, int> edgeOf;
  for (const auto& [id, sec] : cs.place) edgeOf[id] = edge_of_crossing(b, cs, id);
  std::set<int> listed;
  for (const auto& [sec, ids] : cs.onEdge) {
    int ei = b.edge_of(sec);
    if (ei < 0)
      fail(Err::CurveNotOnBoundary, "crossing list on a vanished edge");
    for (int id : ids) {
      auto it = edgeOf.find(id);
      if (it == edgeOf.end() || it->second != ei)
        fail(Err::CurveNotOnBoundary, "crossing list disagrees with placement");
      if (!listed.insert(id).second)
        fail(Err::CurveNotOnBoundary, "crossing listed twice");
    }
  }
  if (listed.size() != cs.place.size())
    fail(Err::CurveNotOnBoundary, "placed crossing missing from its edge list");

  // arcs consume each crossing exactly once per side
  auto edge_at = [&](int id) -> const BEdge& {
    auto it = edgeOf.find(id);
    if (it == edgeOf.end())
      fail(Err::CurveNotOnBoundary,
           "arc references unplaced crossing " + std::to_string(id));
    return b.edges[it->second];
  };
  std::map<int, int> inArcs, outArcs;
  for (const Curve& cu : cs.curves) {
    if (cu.arcs.empty()) fail(Err::CurveNotNormal, "curve with no arcs");
    for (int i = 0; i < int(cu.arcs.size()); ++i) {
      const Arc& a = cu.arcs[i];
      const Arc& nx = cu.arcs[(i + 1) % cu.arcs.size()];
      if (a.cout != nx.cin)
        fail(Err::CurveNotNormal, "consecutive arcs do not share a crossing");
      int fa = face_of_arc(b, a), fn = face_of_arc(b, nx);
      if (fa == fn)
        fail(Err::CurveNotNormal, "curve fails to switch face at a crossing");
      const BEdge& sh = edge_at(a.cout);
      if (!((sh.face0 == fa && sh.face1 == fn) || (sh.face0 == fn && sh.face1 == fa)))
        fail(Err::CurveNotNormal, "shared crossing edge does not border both faces");
      // the entry piece is the side piece of the entry edge in the arc's face
      const BEdge& en = edge_at(a.cin);
      int pin = b.piece_of(a.pin.tile, a.pin.face);
      if (en.piece0 != pin && en.piece1 != pin)
        fail(Err::CurveNotNormal, "arc entry piece does not flank its entry edge");
      ++inArcs[a.cin];
      ++outArcs[a.cout];
    }
  }
  for (int id : listed)
    if (inArcs[id] != 1 || outArcs[id] != 1)
      fail(Err::CurveNotNormal,
           "crossing " + std::to_string(id) + " is not matched by exactly two arcs");

  // per merged face: slots in walk order, chords must not interleave
  for (int fi = 0; fi < int(b.faces.size()); ++fi) {
    const BFace& F = b.faces[fi];
    std::vector<int> slots;                 // crossing per slot, cyclic
    std::map<int, int> slotOf;
    for (const WalkStep& ws : F.walk) {
      auto it = cs.onEdge.find(b.edges[ws.edge].key);
      if (it == cs.onEdge.end()) continue;
      std::vector<int> xs = it->second;
      if (!ws.aligned) std::reverse(xs.begin(), xs.end());
      for (int id : xs) {
        slotOf[id] = int(slots.size());
        slots.push_back(id);
      }
    }
    std::vector<std::pair<int, int>> chords;
    for (const Curve& cu : cs.curves)
      for (const Arc& a : cu.arcs) {
        if (face_of_arc(b, a) != fi) continue;
        auto i0 = slotOf.find(a.cin), i1 = slotOf.find(a.cout);
        if (i0 == slotOf.end() || i1 == slotOf.end())
          fail(Err::CurveNotNormal, "arc endpoint missing from its face walk");
        chords.push_back({i0->second, i1->second});
      }
    if (chords.size() * 2 != slots.size())
      fail(Err::CurveNotNormal,
           "face " + b.face_tag(fi) + " has unmatched crossings on its walk");
    std::vector<char> seen(slots.size(), 0);
    for (auto& [x, y] : chords) {
      if (x == y || seen[x] || seen[y])
        fail(Err::CurveNotNormal, "face " + b.face_tag(fi) + " reuses a walk slot");
      seen[x] = seen[y] = 1;
    }
    const int n = int(slots.size());
    auto between = [&](int a, int lo, int hi) {  // strictly inside (lo, hi) cyclically
      return ((a - lo + n) % n) > 0 && ((a - lo + n) % n) < ((hi - lo + n) % n);
    };
    for (size_t i = 0; i < chords.size(); ++i)
      for (size_t j = i + 1; j < chords.size(); ++j) {
        auto [a1, b1] = chords[i];
        auto [a2, b2] = chords[j];
        if (between(a2, a1, b1) != between(b2, a1, b1))
          fail(Err::CurveNotNormal,
               "arcs cross inside face " + b.face_tag(fi));
      }
  }
}

namespace {

// ---- cutting the surface along the system ----

struct FaceCut {
  // cyclic site list around the face walk: corners, edge segments, crossings
  struct Site {
    int kind = 0;  // 0 corner (a = vertex class), 1 segment (a = edge, b =
                   // canonical v0->v1 index), 2 crossing (a = crossing id)
    int a = 0, b = 0;
  };
  std::vector<Site> sites;
  std::vector<std::pair<int, int>> chords;  // (site of cin, site of cout)
  std::vector<int> chordCurve;              // owning curve per chord
  std::vector<int> regionOfSite;            // -1 root, else chord index
  int nRegions = 0;                         // chords + 1
  std::vector<int> parent;                  // chord -> enclosing chord or -1
};

FaceCut cut_face(const BoundaryComplex& b, const CurveSystem& cs, int fi) {
  const BFace& F = b.faces[fi];
  FaceCut fc;
  std::map<int, int> crossSite;
  for (const WalkStep& ws : F.walk) {
    const BEdge& e = b.edges[ws.edge];
    fc.sites.push_back({0, ws.aligned ? e.v0 : e.v1, 0});
    std::vector<int> xs;
    if (auto it = cs.onEdge.find(e.key); it != cs.onEdge.end()) xs = it->second;
    if (!ws.aligned) std::reverse(xs.begin(), xs.end());
    const int k = int(xs.size());
    for (int j = 0; j <= k; ++j) {
      fc.sites.push_back({1, ws.edge, ws.aligned ? j : k - j});
      if (j < k) {
        crossSite[xs[j]] = int(fc.sites.size());
        fc.sites.push_back({2, xs[j], 0});
      }
    }
  }
  for (int ci = 0; ci < int(cs.curves.size()); ++ci)
    for (const Arc& a : cs.curves[ci].arcs) {
      if (face_of_arc(b, a) != fi) continue;
      fc.chords.push_back({crossSite.at(a.cin), crossSite.at(a.cout)});
      fc.chordCurve.push_back(ci);
    }

  // laminar nesting of the chords (normality was validated beforehand)
  const int m = int(fc.chords.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto lo = [&](int x) { return std::min(fc.chords[x].first, fc.chords[x].second); };
  auto hi = [&](int x) { return std::max(fc.chords[x].first, fc.chords[x].second); };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return lo(x) < lo(y); });
  fc.parent.assign(m, -1);
  std::vector<int> stack;
  for (int x : order) {
    while (!stack.empty() && hi(stack.back()) < lo(x)) stack.pop_back();
    if (!stack.empty()) {
      if (hi(x) > hi(stack.back()))
        throw std::logic_error("interleaved chords after normality check");
      fc.parent[x] = stack.back();
    }
    stack.push_back(x);
  }
  fc.nRegions = m + 1;
  fc.regionOfSite.assign(fc.sites.size(), -1);
  for (int s = 0; s < int(fc.sites.size()); ++s) {
    if (fc.sites[s].kind == 2) continue;  // crossing points are vertices
    int best = -1, span = int(fc.sites.size()) + 1;
    for (int x = 0; x < m; ++x)
      if (lo(x) < s && s < hi(x) && hi(x) - lo(x) < span) {
        best = x;
        span = hi(x) - lo(x);
      }
    fc.regionOfSite[s] = best;
  }
  return fc;
}

}  // namespace

ComplementSummary cut_complement(const BoundaryComplex& b, const CurveSystem& cs) {
  validate_curves(b, cs);
  const int NF = int(b.faces.size());

  // orientation flips: the two walks along an edge must disagree once both
  // faces are read with the global orientation
  std::vector<std::map<int, bool>> walkAligned(NF);
  for (int fi = 0; fi < NF; ++fi)
    for (const WalkStep& ws : b.faces[fi].walk) walkAligned[fi][ws.edge] = ws.aligned;
  std::vector<int> flip(NF, 0);
  flip[0] = 1;
  std::vector<int> queue{0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int fi = queue[qi];
    for (int ei : b.faceEdges[fi]) {
      const BEdge& e = b.edges[ei];
      int fj = e.face0 == fi ? e.face1 : e.face0;
      int want = walkAligned[fi].at(ei) == walkAligned[fj].at(ei) ? -flip[fi] : flip[fi];
      if (flip[fj] == 0) {
        flip[fj] = want;
        queue.push_back(fj);
      } else if (flip[fj] != want) {
        throw std::logic_error("boundary surface is not orientable");
      }
    }
  }

  // per-face cuts + global region ids
  std::vector<FaceCut> cuts;
  std::vector<int> regionBase(NF + 1, 0);
  for (int fi = 0; fi < NF; ++fi) {
    cuts.push_back(cut_face(b, cs, fi));
    regionBase[fi + 1] = regionBase[fi] + cuts[fi].nRegions;
  }
  const int NR = regionBase[NF];
  auto regionId = [&](int fi, int local) { return regionBase[fi] + 1 + local; };
  // local -1 (root region) maps to regionBase[fi]

  // sew the two copies of every edge segment
  UF ruf(NR);
  std::map<std::pair<int, int>, std::vector<int>> segAt;  // (edge, idx) -> regions
  for (int fi = 0; fi < NF; ++fi)
    for (int s = 0; s < int(cuts[fi].sites.size()); ++s) {
      const FaceCut::Site& st = cuts[fi].sites[s];
      if (st.kind != 1) continue;
      int local = cuts[fi].regionOfSite[s];
      segAt[{st.a, st.b}].push_back(local < 0 ? regionBase[fi] : regionId(fi, local));
    }
  for (auto& [key, rs] : segAt) {
    if (rs.size() != 2) throw std::logic_error("edge segment not shared by two faces");
    ruf.join(rs[0], rs[1]);
  }

  // curve sides: left of an arc (cin -> cout against the walk order) is the
  // enclosed side when cin precedes cout; canonical left applies the flip
  struct SideRef {
    int curve, side;  // 0 = canonical left
    int region;
  };
  std::vector<SideRef> refs;
  for (int fi = 0; fi < NF; ++fi) {
    const FaceCut& fc = cuts[fi];
    for (int x = 0; x < int(fc.chords.size()); ++x) {
      int inner = regionId(fi, x);
      int outer = fc.parent[x] < 0 ? regionBase[fi] : regionId(fi, fc.parent[x]);
      bool cinFirst = fc.chords[x].first < fc.chords[x].second;
      int leftR = cinFirst ? inner : outer;
      int rightR = cinFirst ? outer : inner;
      if (flip[fi] < 0) std::swap(leftR, rightR);
      refs.push_back({fc.chordCurve[x], 0, leftR});
      refs.push_back({fc.chordCurve[x], 1, rightR});
    }
  }

  // component per (curve, side); every arc side of one circle must agree
  std::map<std::pair<int, int>, int> circleComp;
  for (const SideRef& r : refs) {
    int comp = ruf.find(r.region);
    auto [it, fresh] = circleComp.emplace(std::make_pair(r.curve, r.side), comp);
    if (!fresh && it->second != comp)
      throw std::logic_error("curve side touches two complement components");
  }

  // explicit cells per component
  std::map<int, int> compIndex;
  std::vector<int> compRoots;
  for (int r = 0; r < NR; ++r) {
    int root = ruf.find(r);
    if (compIndex.emplace(root, int(compRoots.size())).second) compRoots.push_back(root);
  }
  const int NC = int(compRoots.size());
  std::vector<ComplementSide> sides(NC);
  auto compOfRegion = [&](int r) { return compIndex.at(ruf.find(r)); };

  std::vector<std::set<int>> vclassesIn(NC);
  std::map<int, int> vclassComp;
  for (int fi = 0; fi < NF; ++fi) {
    const FaceCut& fc = cuts[fi];
    for (int s = 0; s < int(fc.sites.size()); ++s) {
      const FaceCut::Site& st = fc.sites[s];
      if (st.kind != 0) continue;
      int region = fc.regionOfSite[s] < 0 ? regionBase[fi] : regionId(fi, fc.regionOfSite[s]);
      int comp = compOfRegion(region);
      vclassesIn[comp].insert(st.a);
      auto [it, fresh] = vclassComp.emplace(st.a, comp);
      if (!fresh && it->second != comp)
        throw std::logic_error("vertex class split between components");
    }
    for (int r = 0; r < fc.nRegions; ++r) {
      int global = r == 0 ? regionBase[fi] : regionId(fi, r - 1);
      sides[compOfRegion(global)].faces.insert(fi);
      sides[compOfRegion(global)].chi += 1;  // region = one 2-cell
    }
  }
  for (auto& [key, rs] : segAt) {  // sewn segment = one 1-cell
    int comp = compOfRegion(rs[0]);
    if (comp != compOfRegion(rs[1]))
      throw std::logic_error("sewn segment between components");
    sides[comp].chi -= 1;
  }
  for (int comp = 0; comp < NC; ++comp) sides[comp].chi += (long long)vclassesIn[comp].size();

  // boundary cells: arc sides are edges, crossing side copies are vertices
  for (const auto& [key, comp] : circleComp) {
    sides[comp].circles += 1;
    sides[comp].curveSides.push_back(key);
  }
  for (int ci = 0; ci < int(cs.curves.size()); ++ci)
    for (int side = 0; side < 2; ++side) {
      auto it = circleComp.find({ci, side});
      if (it == circleComp.end()) throw std::logic_error("curve side missing");
      int comp = it->second;
      int n = int(cs.curves[ci].arcs.size());
      sides[comp].chi -= n;       // n arc-side edges
      sides[comp].chi += n;       // n crossing side copies as vertices
    }

  for (int comp = 0; comp < NC; ++comp) {
    long long num = 2 - sides[comp].chi - sides[comp].circles;
    if (num % 2 != 0) throw std::logic_error("component with odd genus defect");
    sides[comp].genus = num / 2;
    std::sort(sides[comp].curveSides.begin(), sides[comp].curveSides.end());
  }

  ComplementSummary out;
  std::vector<int> order(NC);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (sides[x].faces != sides[y].faces) return sides[x].faces < sides[y].faces;
    return sides[x].curveSides < sides[y].curveSides;
  });
  for (int i : order) out.sides.push_back(std::move(sides[i]));
  return out;
}

namespace {

bool try_candidate(const TileComplex& c, const BoundaryComplex& b,
                   const std::vector<Face>& S, const std::vector<FreeWord>& targets,
                   CurveSystem& out) {
  const int g = int(targets.size()) - 1;
  std::vector<char> inS(c.P().F(), 0);
  for (Face f : S) inS[f] = 1;
  std::vector<int> bottom, rest;
  for (int fi = 0; fi < int(b.faces.size()); ++fi)
    (inS[b.faces[fi].name] ? bottom : rest).push_back(fi);
  if (bottom.empty() || rest.empty()) return false;

  for (const std::vector<int>* fs : {&bottom, &rest}) {
    RegionProfile r = region_profile(b, *fs);
    if (!r.connected || r.pinched || r.circles != g + 1 || r.genus != 0) return false;
    if (r.chi != 1 - g) throw std::logic_error("region shape out of balance");
  }

  std::optional<CurveSystem> got = extract_boundary_curves(c, b, inS);
  if (!got || int(got->curves.size()) != g + 1) return false;
  CurveSystem cs = std::move(*got);

  // orient and order the circles to hit the target classes
  std::vector<int> pick;
  std::vector<char> taken(cs.curves.size(), 0);
  for (const FreeWord& target : targets) {
    FreeWord want = cyclic_free_canonical(target);
    int found = -1;
    for (int ci = 0; ci < int(cs.curves.size()) && found < 0; ++ci) {
      if (taken[ci]) continue;
      FreeWord cls = curve_class(b, cs, cs.curves[ci]);
      if (cyclic_free_canonical(cls) == want) found = ci;
      else if (cyclic_free_canonical(free_inv(cls)) == want) {
        reverse_curve(b, cs, cs.curves[ci]);
        found = ci;
      }
    }
    if (found < 0) return false;
    cs.curves[found].cls = curve_class(b, cs, cs.curves[found]);
    taken[found] = 1;
    pick.push_back(found);
  }

  CurveSystem ordered;
  ordered.place = cs.place;
  ordered.onEdge = cs.onEdge;
  ordered.next = cs.next;
  for (int ci : pick) ordered.curves.push_back(std::move(cs.curves[ci]));

  validate_curves(b, ordered);
  ComplementSummary comp = cut_complement(b, ordered);
  if (comp.sides.size() != 2) return false;
  for (const ComplementSide& s : comp.sides)
    if (s.circles != g + 1 || s.genus != 0) return false;
  out = std::move(ordered);
  return true;
}

}  // namespace

CurveSystem product_curves(const TileComplex& c, const BoundaryComplex& b) {
  const Polyhedron& P = c.P();
  const int g = int(c.gens.size());
  if (g == 0) fail(Err::RoutingFailed, "complex has no handle generators");

  std::vector<char> used(P.F(), 0);
  for (const Word& w : c.gens)
    for (Face f : w) used[f] = 1;
  std::vector<Face> freeNames;
  for (Face f = 0; f < P.F(); ++f)
    if (!used[f]) freeNames.push_back(f);

  std::vector<FreeWord> targets;
  FreeWord prod;
  for (int j = 1; j <= g; ++j) {
    targets.push_back({j});
    prod.push_back(j);
  }
  targets.push_back(free_inv(prod));

  const int n = int(freeNames.size());
  for (int size = 1; size <= n; ++size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Face> S;
      for (int i : idx) S.push_back(freeNames[i]);
      CurveSystem cs;
      if (try_candidate(c, b, S, targets, cs)) return cs;
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int k = i + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  fail(Err::RoutingFailed, "no free face set bounds the product curve system");
}

}  // namespace coxcell
