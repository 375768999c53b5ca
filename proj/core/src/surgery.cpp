#include "coxcell/surgery.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coxcell/errors.hpp"
#include "coxcell/freewords.hpp"

namespace coxcell {

namespace {

int arc_face(const BoundaryComplex& b, const Arc& a) {
  return b.face_of(a.pin.tile, a.pin.face);
}

// merged faces touching vertex class v (every surface edge at v is a BEdge)
std::set<int> faces_at_vertex(const BoundaryComplex& b, int v) {
  std::set<int> out;
  for (const BEdge& e : b.edges)
    if (e.v0 == v || e.v1 == v) {
      out.insert(e.face0);
      out.insert(e.face1);
    }
  return out;
}

int walk_far(const BoundaryComplex& b, const BFace& F, int i, int self) {
  const BEdge& e = b.edges[F.walk[i].edge];
  return e.face0 == self ? e.face1 : e.face0;
}

// global vertex class at the corner between walk steps i and i+1
int walk_out_class(const BoundaryComplex& b, const BFace& F, int i) {
  const BEdge& e = b.edges[F.walk[i].edge];
  return F.walk[i].aligned ? e.v1 : e.v0;
}

}  // namespace

IncidenceReport incidence_counts(const BoundaryComplex& b, const CurveSystem& cs) {
  try {
    validate_curves(b, cs);
  } catch (const Error& e) {
    fail(Err::CurveNotNormal, e.what());
  }
  IncidenceReport r;
  for (const Curve& cu : cs.curves)
    for (const Arc& a : cu.arcs) ++r.perFace[arc_face(b, a)];
  for (auto& [f, c] : r.perFace) r.k = std::max(r.k, c);
  for (auto& [f, c] : r.perFace)
    if (c == r.k) ++r.n;
  return r;
}

namespace {

// One side of a face's boundary walk after deleting every edge shared with the
// two neighbouring annulus faces.  A side is clear when the faces across its
// surviving edges stay out of the union; a side that degenerates to a single
// corner is clear when some face at that corner does.
bool some_side_clear(const BoundaryComplex& b, int f, int fPrev, int fNext,
                     const std::set<int>& uni) {
  const BFace& F = b.faces[f];
  const int s = int(F.walk.size());
  std::vector<char> cut(s, 0);
  std::vector<int> far(s);
  for (int i = 0; i < s; ++i) {
    far[i] = walk_far(b, F, i, f);
    cut[i] = far[i] == fPrev || far[i] == fNext;
  }
  for (int i = 0; i < s; ++i) {
    if (cut[i]) continue;
    if (cut[(i + s - 1) % s]) {
      bool clear = true;  // arc component starting at step i
      for (int j = i; j < i + s && !cut[j % s]; ++j)
        if (uni.count(far[j % s])) clear = false;
      if (clear) return true;
    }
  }
  for (int i = 0; i < s; ++i)  // corner pinched between two deleted edges
    if (cut[i] && cut[(i + 1) % s]) {
      for (int g : faces_at_vertex(b, walk_out_class(b, F, i)))
        if (!uni.count(g)) return true;
    }
  return false;
}

}  // namespace

AnnuliReport annuli_report(const BoundaryComplex& b, const CurveSystem& cs) {
  IncidenceReport inc = incidence_counts(b, cs);
  if (inc.k != 1)
    fail(Err::PreconditionK,
         "annulus bookkeeping needs one arc per face, got k = " + std::to_string(inc.k));
  AnnuliReport rep;
  for (int ci = 0; ci < int(cs.curves.size()); ++ci) {
    FaceAnnulus an;
    an.curve = ci;
    for (const Arc& a : cs.curves[ci].arcs) an.faces.push_back(arc_face(b, a));
    rep.annuli.push_back(std::move(an));
  }
  std::map<int, std::pair<int, int>> at;  // face -> (curve, slot); unique at k = 1
  for (const FaceAnnulus& an : rep.annuli)
    for (int i = 0; i < int(an.faces.size()); ++i) {
      rep.unionFaces.insert(an.faces[i]);
      at[an.faces[i]] = {an.curve, i};
    }
  for (int f : rep.unionFaces) {
    int adjIn = 0;
    for (int g : b.faceAdj[f])
      if (rep.unionFaces.count(g)) ++adjIn;
    rep.overlap[f] = adjIn - 2;
    if (adjIn > 2) ++rep.overlapCount;
    const auto& fs = rep.annuli[at[f].first].faces;
    const int n = int(fs.size());
    int fPrev = fs[(at[f].second + n - 1) % n], fNext = fs[(at[f].second + 1) % n];
    rep.good[f] = some_side_clear(b, f, fPrev, fNext, rep.unionFaces);
    if (!rep.good[f]) ++rep.badCount;
  }
  return rep;
}

bool face_annulus_check(const BoundaryComplex& b, const std::vector<int>& faces) {
  const int n = int(faces.size());
  if (n < 3) return false;
  if (std::set<int>(faces.begin(), faces.end()).size() != size_t(n)) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& adj = b.faceAdj[faces[i]];
      bool isAdj = std::binary_search(adj.begin(), adj.end(), faces[j]);
      bool want = (j - i == 1) || (j - i == n - 1);
      if (isAdj != want) return false;
    }
  std::map<int, std::set<int>> fv;
  for (int f : faces) fv[f];
  for (const BEdge& e : b.edges)
    for (int f : {e.face0, e.face1}) {
      auto it = fv.find(f);
      if (it == fv.end()) continue;
      it->second.insert(e.v0);
      it->second.insert(e.v1);
    }
  std::set<int> common = fv[faces[0]];
  for (int f : faces) {
    std::set<int> keep;
    for (int v : common)
      if (fv[f].count(v)) keep.insert(v);
    common.swap(keep);
  }
  return common.empty();
}

// ---- rerouting across an expansion ----
//
// After expand_face the old merged face is covered by a dome of new tiles; its
// arcs are replaced by collars that run through the shell zone faces between
// the dome top and the ring.  Landing points live on the two shell edges of
// the foot's own wedge, and the circle of stations eB, mid, eF per wedge (in
// walk order) gives exact integer positions for nesting and zone counts.

namespace {

struct Foot {
  int cross = -1, wedge = -1, rank = -1;
  int curve = -1, arc = -1;
  bool entry = false;  // crossing is the replaced arc's cin
};

struct ChordRec {
  int lo = -1, hi = -1;  // circle positions of the feet, lo < hi
  int curve = -1, arc = -1;
  int parent = -1;  // laminar nesting forest over sorted chords
};

struct WedgeGeo {
  int tile = -1, nu = -1;
  Face x = -1, yB = -1, yF = -1;
  int eB = -1, eF = -1, eM = -1;  // shell edges in the rebuilt boundary
  bool v0B = false, v0F = false, v0M = false;  // edge v0 is the mid vertex
  int ringFace = -1;  // far face of the walk edge, an id in the old boundary
  int zoneFace = -1;  // rebuilt shell face between this mid and the next
};

struct Variant {
  bool fromLo;  // collar travels forward from the lo foot
  bool startF, endF;  // landing edge per end: eF when true, else eB
};

// preference order: tight span, complement, the two hugs, then wide forms
constexpr Variant kVariants[8] = {
    {true, true, false},  {false, true, false}, {true, true, true},
    {true, false, false}, {true, false, true},  {false, false, true},
    {false, true, true},  {false, false, false},
};

struct Route {
  int fromPos = -1, toPos = -1;  // feet circle positions, travel order
  int stA = -1, stB = -1;
  long long ra = 0, rb = 0, len = 0;  // refined circle interval
  std::vector<int> mids;   // wedges whose mid station lies inside, travel order
  std::vector<int> zones;  // wedge index of every zone entered, travel order
};

int station(int wedge, bool toF) { return 3 * wedge + (toF ? 2 : 0); }

int zone_of_station(int st, int s) {
  return st % 3 == 2 ? st / 3 : (st / 3 + s - 1) % s;
}

Route make_route(const std::vector<Foot>& feet, const ChordRec& ch, const Variant& v,
                 int s, long long R, long long L) {
  Route r;
  r.fromPos = v.fromLo ? ch.lo : ch.hi;
  r.toPos = v.fromLo ? ch.hi : ch.lo;
  r.stA = station(feet[r.fromPos].wedge, v.startF);
  r.stB = station(feet[r.toPos].wedge, v.endF);
  r.ra = r.stA * R + 1 + feet[r.fromPos].rank;
  r.rb = r.stB * R + 1 + feet[r.toPos].rank;
  r.len = ((r.rb - r.ra) % L + L) % L;
  std::vector<std::pair<long long, int>> ms;
  for (int w = 0; w < s; ++w) {
    long long d = (((3 * w + 1) * R - r.ra) % L + L) % L;
    if (d > 0 && d < r.len) ms.push_back({d, w});
  }
  std::sort(ms.begin(), ms.end());
  r.zones.push_back(zone_of_station(r.stA, s));
  for (auto& [d, w] : ms) {
    r.mids.push_back(w);
    r.zones.push_back(w);
  }
  return r;
}

bool routes_nested_or_disjoint(const Route& a, const Route& c, long long L) {
  auto inside = [&](long long x, const Route& r) {
    long long d = ((x - r.ra) % L + L) % L;
    return d > 0 && d < r.len;
  };
  auto contains = [&](const Route& outer, const Route& inner) {
    return inside(inner.ra, outer) && inside(inner.rb, outer) &&
           (((inner.ra - outer.ra) % L + L) % L) + inner.len <= outer.len;
  };
  if (contains(a, c) || contains(c, a)) return true;
  return !inside(c.ra, a) && !inside(c.rb, a) && !inside(a.ra, c) && !inside(a.rb, c);
}

std::vector<WedgeGeo> resolve_wedges(const BoundaryComplex& b, const BoundaryComplex& b2,
                                     const ExpansionRecord& rec) {
  const Polyhedron& P = b.cx->P();
  const BFace& F = b.faces[rec.face];
  const int s = int(F.walk.size());
  const Face h = rec.name;
  std::map<int, int> toNew;
  for (size_t i = 0; i < rec.baseTiles.size(); ++i) toNew[rec.baseTiles[i]] = rec.newTiles[i];
  std::vector<WedgeGeo> W(s);
  for (int j = 0; j < s; ++j) {
    const WalkStep& st = F.walk[j];
    const BEdge& be = b.edges[st.edge];
    if (be.dihedral != 1)
      fail(Err::PlanInfeasible, "expanded face is not locally convex at an edge");
    const Sector& sec = be.chain[0];
    WedgeGeo& w = W[j];
    w.tile = sec.tile;
    w.x = sec.a == h ? sec.b : sec.a;
    w.nu = toNew.at(w.tile);
    const auto& rx = P.ring[w.x];
    const int sz = int(rx.size());
    int hi = -1;
    for (int t = 0; t < sz; ++t)
      if (rx[t] == h) hi = t;
    Face c1 = rx[(hi + 1) % sz], c2 = rx[(hi + sz - 1) % sz];
    int coutClass = st.aligned ? be.v1 : be.v0;
    bool fwd1 = b.vclass(w.tile, P.vertex_id(h, w.x, c1)) == coutClass;
    bool fwd2 = b.vclass(w.tile, P.vertex_id(h, w.x, c2)) == coutClass;
    if (fwd1 == fwd2)
      fail(Err::PlanInfeasible, "ambiguous corner orientation at an expanded edge");
    w.yF = fwd1 ? rx[(hi + 2) % sz] : rx[(hi + sz - 2) % sz];
    w.yB = fwd1 ? rx[(hi + sz - 2) % sz] : rx[(hi + 2) % sz];
    auto shell_edge = [&](Face a, Face c) {
      return b2.edge_of(Sector{w.nu, std::min(a, c), std::max(a, c)});
    };
    w.eB = shell_edge(w.x, w.yB);
    w.eF = shell_edge(w.x, w.yF);
    w.eM = shell_edge(w.yB, w.yF);
    if (w.eB < 0 || w.eF < 0 || w.eM < 0)
      fail(Err::PlanInfeasible, "expansion shell lacks an expected boundary edge");
    int mid = b2.vclass(w.nu, P.vertex_id(w.x, w.yF, w.yB));
    w.v0B = b2.edges[w.eB].v0 == mid;
    w.v0F = b2.edges[w.eF].v0 == mid;
    w.v0M = b2.edges[w.eM].v0 == mid;
    w.ringFace = walk_far(b, F, j, rec.face);
  }
  for (int j = 0; j < s; ++j) {
    int jn = (j + 1) % s;
    int zf = b2.face_of(W[j].nu, W[j].yF);
    int zb = b2.face_of(W[jn].nu, W[jn].yB);
    if (zf < 0 || zf != zb)
      fail(Err::PlanInfeasible, "expansion shell zones do not line up");
    W[j].zoneFace = zf;
  }
  return W;
}

// arc counts per stable face key; merged face ids shift across rebuilds
std::map<PieceKey, int> keyed_counts(const BoundaryComplex& b, const CurveSystem& cs) {
  std::map<PieceKey, int> out;
  for (const Curve& cu : cs.curves)
    for (const Arc& a : cu.arcs) ++out[b.face_key(arc_face(b, a))];
  return out;
}

struct NewCross {
  int id = -1, edge = -1;
  long long sortKey = 0;  // order along the edge, measured from the mid vertex
  bool fromMidV0 = false;
  PieceKey pinFwd, pinBwd;
};

// Applies one candidate assignment of collar variants to a copy of the curve
// system.  Returns false (with the reason) when validation or the conserved
// ring counts reject it; on success `cs` is replaced and the chords filled.
bool apply_candidate(const BoundaryComplex& b, const BoundaryComplex& b2,
                     const ExpansionRecord& rec, const std::vector<WedgeGeo>& W,
                     const std::vector<Foot>& feet, const std::vector<ChordRec>& chords,
                     const std::vector<Route>& routes,
                     const std::map<PieceKey, int>& oldCnt, int mode, CurveSystem& cs,
                     std::vector<RerouteChord>* chordsOut, std::string* why) {
  const BFace& F = b.faces[rec.face];
  CurveSystem ns = cs;
  std::map<std::pair<int, int>, std::vector<Arc>> repl;
  std::map<int, int> fuseIn, fuseOut;  // old end crossing -> oriented new end
  std::map<int, PieceKey> ringPin;     // landing crossing -> ring-side piece
  std::vector<NewCross> fresh;
  std::vector<RerouteChord> plan;
  for (size_t c = 0; c < chords.size(); ++c) {
    const ChordRec& ch = chords[c];
    const Route& r = routes[c];
    std::vector<NewCross> seq;
    auto landing = [&](int pos, bool toF) {
      const Foot& ft = feet[pos];
      const WedgeGeo& w = W[ft.wedge];
      NewCross nc;
      nc.edge = toF ? w.eF : w.eB;
      nc.fromMidV0 = toF ? w.v0F : w.v0B;
      nc.sortKey = toF ? ft.rank : -ft.rank;  // eF ascends from the mid, eB descends
      Face y = toF ? w.yF : w.yB;
      nc.pinFwd = nc.pinBwd = PieceKey{w.nu, y};
      return nc;
    };
    seq.push_back(landing(r.fromPos, r.stA % 3 == 2));
    for (int wz : r.mids) {
      NewCross nc;
      nc.edge = W[wz].eM;
      nc.fromMidV0 = W[wz].v0M;
      nc.sortKey = r.len;  // shorter collars stay nearer the mid vertex
      nc.pinFwd = PieceKey{W[wz].nu, W[wz].yF};
      nc.pinBwd = PieceKey{W[wz].nu, W[wz].yB};
      seq.push_back(nc);
    }
    seq.push_back(landing(r.toPos, r.stB % 3 == 2));
    for (NewCross& nc : seq) nc.id = ns.next++;
    const Arc oldArc = cs.curves[ch.curve].arcs[ch.arc];
    const bool fwd = feet[r.fromPos].entry;
    std::vector<Arc>& ra = repl[{ch.curve, ch.arc}];
    const int T = int(seq.size());
    if (fwd)
      for (int t = 0; t + 1 < T; ++t)
        ra.push_back(Arc{seq[t].id, seq[t + 1].id, seq[t].pinFwd});
    else
      for (int t = T - 1; t >= 1; --t)
        ra.push_back(Arc{seq[t].id, seq[t - 1].id, seq[t].pinBwd});
    int firstId = fwd ? seq.front().id : seq.back().id;
    int lastId = fwd ? seq.back().id : seq.front().id;
    fuseIn[oldArc.cin] = firstId;
    fuseOut[oldArc.cout] = lastId;
    const WedgeGeo& wf = W[feet[r.fromPos].wedge];
    const WedgeGeo& wt = W[feet[r.toPos].wedge];
    ringPin[seq.front().id] = PieceKey{wf.nu, wf.x};
    ringPin[seq.back().id] = PieceKey{wt.nu, wt.x};
    RerouteChord rc;
    rc.curve = ch.curve;
    rc.arc = ch.arc;
    rc.p = oldArc.cin;
    rc.q = oldArc.cout;
    rc.backSide = !kVariants[0].fromLo;  // overwritten below
    rc.gamma.reserve(T);
    if (fwd)
      for (const NewCross& nc : seq) rc.gamma.push_back(nc.id);
    else
      for (int t = T - 1; t >= 0; --t) rc.gamma.push_back(seq[t].id);
    plan.push_back(std::move(rc));
    fresh.insert(fresh.end(), seq.begin(), seq.end());
  }
  // drop the old feet and the covered walk edges, then place the new crossings
  for (const Foot& ft : feet) ns.place.erase(ft.cross);
  for (const WalkStep& st : F.walk) ns.onEdge.erase(b.edges[st.edge].key);
  std::map<int, std::vector<std::pair<long long, int>>> buckets;
  for (const NewCross& nc : fresh) {
    ns.place[nc.id] = b2.edges[nc.edge].key;
    buckets[nc.edge].push_back({nc.sortKey, nc.id});
  }
  for (auto& [e, xs] : buckets) {
    std::stable_sort(xs.begin(), xs.end(),
                     [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<int> ids;
    for (auto& [kk, id] : xs) ids.push_back(id);
    bool fromMidV0 = false;
    for (const NewCross& nc : fresh)
      if (nc.edge == e) fromMidV0 = nc.fromMidV0;
    if (!fromMidV0) std::reverse(ids.begin(), ids.end());
    ns.onEdge[b2.edges[e].key] = ids;
  }
  // splice replacements into the curves and rename the fused neighbour ends
  for (int ci = 0; ci < int(ns.curves.size()); ++ci) {
    std::vector<Arc> arcs;
    for (int ai = 0; ai < int(cs.curves[ci].arcs.size()); ++ai) {
      auto it = repl.find({ci, ai});
      if (it != repl.end()) {
        arcs.insert(arcs.end(), it->second.begin(), it->second.end());
        continue;
      }
      Arc a = cs.curves[ci].arcs[ai];
      auto fo = fuseOut.find(a.cin);
      if (fo != fuseOut.end()) {
        a.cin = fo->second;
        a.pin = ringPin.at(fo->second);
      }
      auto fi = fuseIn.find(a.cout);
      if (fi != fuseIn.end()) a.cout = fi->second;
      arcs.push_back(a);
    }
    ns.curves[ci].arcs = std::move(arcs);
  }
  try {
    validate_curves(b2, ns);
  } catch (const Error& e) {
    if (why) *why = e.what();
    return false;
  }
  // ring faces keep their arc counts; only shell faces may pick up new ones
  std::map<PieceKey, int> newCnt = keyed_counts(b2, ns);
  const PieceKey kF = b.face_key(rec.face);
  int minNew = *std::min_element(rec.newTiles.begin(), rec.newTiles.end());
  const int cap = mode == 0 ? int(chords.size()) - 1 : 1;
  for (auto& [key, cnt] : oldCnt) {
    if (key == kF) continue;
    auto it = newCnt.find(key);
    if (it == newCnt.end() || it->second != cnt) {
      if (why) *why = "a ring face changed its arc count";
      return false;
    }
  }
  for (auto& [key, cnt] : newCnt) {
    if (oldCnt.count(key)) continue;
    if (key.tile < minNew || cnt > cap) {
      if (why) *why = "a shell face exceeds the arc bound";
      return false;
    }
  }
  if (newCnt.count(kF)) {
    if (why) *why = "the expanded face still carries arcs";
    return false;
  }
  for (Curve& cu : ns.curves) cu.cls = curve_class(b2, ns, cu);
  cs = std::move(ns);
  if (chordsOut) *chordsOut = std::move(plan);
  return true;
}

// Shared planner for every reroute mode.  mode 0 clears a face with k >= 2
// arcs, mode 1 (good) and mode 2 (bad) push a single collar around a face of
// an annulus union.  Returns the rebuilt boundary of the expanded complex.
BoundaryComplex reroute_core(const TileComplex& cx, const BoundaryComplex& b,
                             const ExpansionRecord& rec, CurveSystem& cs, int mode,
                             const std::set<int>& unionFaces, ReroutePlan& plan) {
  BoundaryComplex b2 = build_boundary(cx);
  const BFace& F = b.faces[rec.face];
  const int s = int(F.walk.size());
  std::vector<WedgeGeo> W = resolve_wedges(b, b2, rec);

  // feet: the arc ends sitting on the covered walk, in circle order
  std::map<int, std::tuple<int, int, bool>> ends;
  for (int ci = 0; ci < int(cs.curves.size()); ++ci)
    for (int ai = 0; ai < int(cs.curves[ci].arcs.size()); ++ai) {
      const Arc& a = cs.curves[ci].arcs[ai];
      if (arc_face(b, a) != rec.face) continue;
      ends[a.cin] = {ci, ai, true};
      ends[a.cout] = {ci, ai, false};
    }
  std::vector<Foot> feet;
  for (int j = 0; j < s; ++j) {
    auto it = cs.onEdge.find(b.edges[F.walk[j].edge].key);
    if (it == cs.onEdge.end()) continue;
    std::vector<int> xs = it->second;
    if (!F.walk[j].aligned) std::reverse(xs.begin(), xs.end());
    for (int id : xs) {
      auto e = ends.find(id);
      if (e == ends.end())
        fail(Err::PlanInfeasible, "a crossing on the expanded face is not an arc end");
      Foot ft;
      ft.cross = id;
      ft.wedge = j;
      ft.rank = int(feet.size());
      std::tie(ft.curve, ft.arc, ft.entry) = e->second;
      feet.push_back(ft);
    }
  }
  if (feet.size() != ends.size())
    fail(Err::PlanInfeasible, "arc ends of the expanded face are not all on its walk");

  std::vector<ChordRec> chords;
  {
    std::map<std::pair<int, int>, std::vector<int>> byArc;
    for (const Foot& ft : feet) byArc[{ft.curve, ft.arc}].push_back(ft.rank);
    for (auto& [ka, ps] : byArc) {
      if (ps.size() != 2) fail(Err::PlanInfeasible, "an arc meets the face walk once");
      ChordRec ch;
      ch.lo = std::min(ps[0], ps[1]);
      ch.hi = std::max(ps[0], ps[1]);
      ch.curve = ka.first;
      ch.arc = ka.second;
      chords.push_back(ch);
    }
  }
  std::sort(chords.begin(), chords.end(), [](const ChordRec& a, const ChordRec& c) {
    return a.lo != c.lo ? a.lo < c.lo : a.hi > c.hi;
  });
  const int k = int(chords.size());
  std::vector<int> stack_;
  for (int i = 0; i < k; ++i) {
    while (!stack_.empty() && chords[stack_.back()].hi < chords[i].lo) stack_.pop_back();
    if (!stack_.empty()) {
      if (chords[i].hi > chords[stack_.back()].hi)
        fail(Err::PlanInfeasible, "arcs in the face are not laminar");
      chords[i].parent = stack_.back();
    }
    stack_.push_back(i);
  }

  if (mode == 0) {
    if (k < 2) fail(Err::PlanInfeasible, "crowded-face reroute needs at least two arcs");
    bool case1 = false, case2 = false;
    for (int i = 0; i < k && !case1; ++i)
      for (int j = i + 1; j < k && !case1; ++j) {
        std::set<int> ws = {feet[chords[i].lo].wedge, feet[chords[i].hi].wedge,
                            feet[chords[j].lo].wedge, feet[chords[j].hi].wedge};
        case1 = ws.size() == 4;
      }
    for (int w = 0; w < s && !case2; ++w) {
      bool all = true;
      for (const ChordRec& ch : chords)
        all = all && (feet[ch.lo].wedge == w || feet[ch.hi].wedge == w);
      case2 = all;
    }
    if (!case1 && !case2)
      fail(Err::CaseDetectionAmbiguous,
           "face " + b.face_tag(rec.face) + " matches neither splitting case");
  } else if (k != 1) {
    fail(Err::PlanInfeasible, "collar reroute needs exactly one arc, got " +
                                  std::to_string(k));
  }

  const long long R = 2LL * k + 2, L = 3LL * s * R;
  const std::map<PieceKey, int> oldCnt = keyed_counts(b, cs);

  auto zone_caps_ok = [&](const std::vector<Route>& rs) {
    std::map<int, int> zc;
    for (const Route& r : rs)
      for (int z : r.zones) ++zc[W[z].zoneFace];
    const int cap = mode == 0 ? k - 1 : 1;
    for (auto& [f, c] : zc)
      if (c > cap) return false;
    return true;
  };
  auto union_ring_score = [&](const Route& r, const ChordRec& ch) {
    std::set<int> touched;
    for (int z : r.zones) {
      touched.insert(W[z].ringFace);
      touched.insert(W[(z + 1) % s].ringFace);
    }
    touched.erase(W[feet[ch.lo].wedge].ringFace);
    touched.erase(W[feet[ch.hi].wedge].ringFace);
    std::set<int> dirty;
    for (int f : touched)
      if (unionFaces.count(f)) dirty.insert(f);
    return dirty;
  };

  std::vector<RerouteChord> chordsOut;
  bool done = false;
  int attempts = 0;
  std::vector<int> chosen(k, 0);
  std::string lastWhy = "no candidate produced a valid system";
  if (k == 1) {
    std::vector<std::tuple<int, int, int>> order;  // (|dirty|, min face, variant)
    for (int v = 0; v < 8; ++v) {
      Route r = make_route(feet, chords[0], kVariants[v], s, R, L);
      if (!zone_caps_ok({r})) continue;
      std::set<int> dirty = union_ring_score(r, chords[0]);
      if (mode == 1 && !dirty.empty()) continue;
      order.push_back({int(dirty.size()), dirty.empty() ? INT_MAX : *dirty.begin(), v});
    }
    std::stable_sort(order.begin(), order.end());
    for (auto& [nd, mf, v] : order) {
      Route r = make_route(feet, chords[0], kVariants[v], s, R, L);
      if (++attempts > 512) break;
      if (apply_candidate(b, b2, rec, W, feet, chords, {r}, oldCnt, mode, cs, &chordsOut,
                          &lastWhy)) {
        chordsOut[0].backSide = !kVariants[v].fromLo;
        chosen[0] = v;
        done = true;
        break;
      }
    }
  } else {
    std::vector<int> odo(k, 0);
    for (;;) {
      std::vector<Route> rs;
      rs.reserve(k);
      for (int i = 0; i < k; ++i)
        rs.push_back(make_route(feet, chords[i], kVariants[odo[i]], s, R, L));
      bool ok = zone_caps_ok(rs);
      for (int i = 0; i < k && ok; ++i)
        for (int j = i + 1; j < k && ok; ++j)
          ok = routes_nested_or_disjoint(rs[i], rs[j], L);
      if (ok && ++attempts <= 512 &&
          apply_candidate(b, b2, rec, W, feet, chords, rs, oldCnt, mode, cs, &chordsOut,
                          &lastWhy)) {
        for (int i = 0; i < k; ++i) {
          chordsOut[i].backSide = !kVariants[odo[i]].fromLo;
          chosen[i] = odo[i];
        }
        done = true;
        break;
      }
      int d = k - 1;
      while (d >= 0 && odo[d] == 7) odo[d--] = 0;
      if (d < 0 || attempts > 512) break;
      ++odo[d];
    }
  }
  if (!done)
    fail(Err::PlanInfeasible,
         "no feasible collar assignment for face " + b.face_tag(rec.face) + ": " + lastWhy);

  plan.face = rec.face;
  plan.k = k;
  plan.chords = std::move(chordsOut);
  plan.extremes = {-1, -1};
  if (k >= 2) {
    std::vector<int> roots;
    for (int i = 0; i < k; ++i)
      if (chords[i].parent < 0) roots.push_back(i);
    if (roots.size() >= 2) {
      plan.extremes = {roots.front(), roots.back()};
    } else {
      int child = -1;
      for (int i = 0; i < k && child < 0; ++i)
        if (chords[i].parent == roots.front()) child = i;
      plan.extremes = {roots.front(), child};
    }
  }
  return b2;
}

bool faces_adjacent(const BoundaryComplex& b, int f, int g) {
  const auto& adj = b.faceAdj[f];
  return std::binary_search(adj.begin(), adj.end(), g);
}

// Greedy splice pass over one curve: merge two visits of the same face, or
// bridge two visits of adjacent faces across an empty shared edge.  Every
// candidate is validated on a copy and must keep the cyclic class.
void shortcut_curve(const BoundaryComplex& b, CurveSystem& cs, int ci) {
  const FreeWord target = cyclic_free_canonical(cs.curves[ci].cls);
  auto attempt = [&](CurveSystem& trial) {
    try {
      validate_curves(b, trial);
    } catch (const Error&) {
      return false;
    }
    if (cyclic_free_canonical(curve_class(b, trial, trial.curves[ci])) != target)
      return false;
    trial.curves[ci].cls = curve_class(b, trial, trial.curves[ci]);
    return true;
  };
  auto drop_crossings = [&](CurveSystem& t, const std::vector<int>& ids) {
    for (int id : ids) {
      auto pl = t.place.find(id);
      if (pl == t.place.end()) continue;
      auto& xs = t.onEdge[pl->second];
      xs.erase(std::remove(xs.begin(), xs.end(), id), xs.end());
      if (xs.empty()) t.onEdge.erase(pl->second);
      t.place.erase(pl);
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    const Curve& cu = cs.curves[ci];
    const int n = int(cu.arcs.size());
    if (n < 4) break;
    std::vector<int> fv(n);
    for (int i = 0; i < n; ++i) fv[i] = arc_face(b, cu.arcs[i]);
    for (int i = 0; i < n && !changed; ++i)
      for (int d = 2; d <= n - 2 && !changed; ++d) {
        const int j = (i + d) % n;
        std::vector<Arc> rot(n);
        for (int t = 0; t < n; ++t) rot[t] = cu.arcs[(i + t) % n];
        std::vector<int> dropped;
        for (int t = 0; t < d; ++t) dropped.push_back(rot[t].cout);
        if (fv[i] == fv[j]) {
          CurveSystem trial = cs;
          std::vector<Arc> arcs;
          Arc merged = rot[0];
          merged.cout = rot[d].cout;
          arcs.push_back(merged);
          for (int t = d + 1; t < n; ++t) arcs.push_back(rot[t]);
          trial.curves[ci].arcs = std::move(arcs);
          drop_crossings(trial, dropped);
          if (attempt(trial)) {
            cs = std::move(trial);
            changed = true;
          }
        } else if (faces_adjacent(b, fv[i], fv[j])) {
          int eid = -1;
          for (int e = 0; e < int(b.edges.size()) && eid < 0; ++e) {
            const BEdge& be = b.edges[e];
            bool match = (be.face0 == fv[i] && be.face1 == fv[j]) ||
                         (be.face0 == fv[j] && be.face1 == fv[i]);
            if (match && !cs.onEdge.count(be.key)) eid = e;
          }
          if (eid < 0) continue;
          CurveSystem trial = cs;
          const BEdge& be = b.edges[eid];
          int hatc = trial.next++;
          trial.place[hatc] = be.key;
          trial.onEdge[be.key] = {hatc};
          int pj = b.pieceFace[be.piece0] == fv[j] ? be.piece0 : be.piece1;
          std::vector<Arc> arcs;
          Arc head = rot[0];
          head.cout = hatc;
          arcs.push_back(head);
          Arc tail = rot[d];
          tail.cin = hatc;
          tail.pin = b.pieces[pj];
          arcs.push_back(tail);
          for (int t = d + 1; t < n; ++t) arcs.push_back(rot[t]);
          trial.curves[ci].arcs = std::move(arcs);
          drop_crossings(trial, dropped);
          if (attempt(trial)) {
            cs = std::move(trial);
            changed = true;
          }
        }
      }
  }
}

}  // namespace

ReroutePlan reroute_phase1(const TileComplex& c, const BoundaryComplex& bPre,
                           const ExpansionRecord& e, CurveSystem& cs) {
  ReroutePlan plan;
  reroute_core(c, bPre, e, cs, 0, {}, plan);
  return plan;
}

ReroutePlan reroute_overlap(const TileComplex& c, const BoundaryComplex& bPre,
                            const ExpansionRecord& e, CurveSystem& cs, bool goodMode,
                            const std::set<int>& unionFaces) {
  ReroutePlan plan;
  BoundaryComplex b2 = reroute_core(c, bPre, e, cs, goodMode ? 1 : 2, unionFaces, plan);
  shortcut_curve(b2, cs, plan.chords.front().curve);
  return plan;
}

std::vector<int> shortcut(const BoundaryComplex& b, const std::vector<int>& faceVisits) {
  std::vector<int> out = faceVisits;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 2 < out.size() && !changed; ++i)
      for (size_t j = i + 2; j < out.size() && !changed; ++j) {
        if (out[i] == out[j]) {
          out.erase(out.begin() + i + 1, out.begin() + j + 1);
          changed = true;
        } else if (faces_adjacent(b, out[i], out[j])) {
          out.erase(out.begin() + i + 1, out.begin() + j);
          changed = true;
        }
      }
  }
  return out;
}

DriverResult run_annuli_driver(const TileComplex& c, const CurveSystem& cs, int budget,
                               const StepHook& hook) {
  DriverResult R;
  R.cx = c;
  R.curves = cs;
  BoundaryComplex b = build_boundary(R.cx);
  validate_curves(b, R.curves);
  const long long genus0 = b.euler.genus;
  std::vector<FreeWord> targets;
  for (const Curve& cu : R.curves.curves)
    targets.push_back(cyclic_free_canonical(curve_class(b, R.curves, cu)));
  AnnuliReport rep;
  int plateau = -1, streak = 0;
  for (;;) {
    for (const BEdge& e : b.edges)
      if (e.dihedral == 3)
        fail(Err::ProgressStalled, "boundary is not locally convex");
    if (b.euler.genus != genus0)
      fail(Err::ProgressStalled, "boundary genus changed during surgery");
    for (size_t i = 0; i < targets.size(); ++i)
      if (cyclic_free_canonical(curve_class(b, R.curves, R.curves.curves[i])) !=
          targets[i])
        fail(Err::ProgressStalled, "curve class drifted during surgery");
    IncidenceReport inc = incidence_counts(b, R.curves);
    if (inc.k == 0) {
      rep = AnnuliReport{};
      break;
    }
    int mode = -1, face = -1;
    std::set<int> uni;
    if (inc.k > 1) {
      mode = 0;
      for (auto& [f, cnt] : inc.perFace)
        if (cnt == inc.k) {
          face = f;
          break;
        }
    } else {
      rep = annuli_report(b, R.curves);
      if (rep.badCount > 0) {
        mode = 2;
        for (auto& [f, g] : rep.good)
          if (!g) {
            face = f;
            break;
          }
      } else if (rep.overlapCount > 0) {
        mode = 1;
        for (auto& [f, o] : rep.overlap)
          if (o > 0) {
            face = f;
            break;
          }
        if (!rep.good.at(face))
          fail(Err::ProgressStalled, "positive-overlap face " + b.face_tag(face) +
                                         " is not good");
      } else {
        break;
      }
      uni = rep.unionFaces;
    }
    if (R.expansions >= budget)
      fail(Err::BudgetExceeded,
           "expansion budget " + std::to_string(budget) + " exhausted");
    const std::string tag = b.face_tag(face);
    const int preK = inc.k, preN = inc.n;
    const int preBad = rep.badCount, preOverlap = rep.overlapCount;
    std::vector<PieceKey> oldUnionKeys;
    if (mode == 2)
      for (int f : uni) oldUnionKeys.push_back(b.face_key(f));
    ExpansionRecord recE = expand_face(R.cx, b, face);
    ReroutePlan plan;
    BoundaryComplex b2 = reroute_core(R.cx, b, recE, R.curves, mode, uni, plan);
    if (mode == 1) shortcut_curve(b2, R.curves, plan.chords.front().curve);
    ++R.expansions;
    b = std::move(b2);
    SurgeryStep st;
    st.phase = mode == 0 ? "p1" : (mode == 2 ? "p2" : "p3");
    st.face = tag;
    st.tiles = int(R.cx.tiles.size());
    IncidenceReport post = incidence_counts(b, R.curves);
    st.k = post.k;
    st.n = post.n;
    st.badCount = -1;
    st.overlapCount = -1;
    if (mode == 0 && !(post.k < preK || (post.k == preK && post.n < preN)))
      fail(Err::ProgressStalled, "(k, n) did not drop after clearing " + tag);
    if (post.k == 1) {
      AnnuliReport pr = annuli_report(b, R.curves);
      st.badCount = pr.badCount;
      st.overlapCount = pr.overlapCount;
      if (mode == 2) {
        if (pr.badCount > preBad)
          fail(Err::ProgressStalled, "bad-face count rose after collaring " + tag);
        if (plateau < 0) plateau = preBad;
        if (pr.badCount < plateau) {
          plateau = pr.badCount;
          streak = 0;
        } else if (++streak > std::max(plateau, 1)) {
          fail(Err::ProgressStalled, "bad-face sweep is not making progress");
        }
        std::set<int> carried;
        for (const PieceKey& key : oldUnionKeys) {
          int g = b.face_of(key.tile, key.face);
          if (g >= 0) carried.insert(g);
        }
        for (int f : pr.unionFaces)
          if (!carried.count(f) && !pr.good.at(f))
            fail(Err::ProgressStalled, "collaring " + tag + " introduced a bad face");
      } else if (mode == 1 && pr.overlapCount >= preOverlap) {
        fail(Err::ProgressStalled, "overlap count did not drop after " + tag);
      }
    }
    R.trace.push_back(st);
    if (hook) hook(R.cx, b, R.curves);
  }
  R.annuli = rep.annuli;
  for (const FaceAnnulus& an : R.annuli)
    if (!face_annulus_check(b, an.faces))
      fail(Err::ProgressStalled, "terminal face ring is not an annulus");
  for (size_t i = 0; i < R.annuli.size(); ++i)
    for (size_t j = i + 1; j < R.annuli.size(); ++j) {
      std::set<int> fi(R.annuli[i].faces.begin(), R.annuli[i].faces.end());
      std::set<int> fj(R.annuli[j].faces.begin(), R.annuli[j].faces.end());
      for (int f : fj)
        if (fi.count(f)) fail(Err::ProgressStalled, "terminal annuli share a face");
      std::map<int, std::set<int>> fa, fb;  // vertex -> incident faces per annulus
      for (const BEdge& e : b.edges)
        for (int f : {e.face0, e.face1}) {
          if (fi.count(f))
            for (int v : {e.v0, e.v1}) fa[v].insert(f);
          if (fj.count(f))
            for (int v : {e.v0, e.v1}) fb[v].insert(f);
        }
      for (auto& [v, sa] : fa) {
        auto it = fb.find(v);
        if (it == fb.end()) continue;
        if (int(sa.size() + it->second.size()) >= 3)
          fail(Err::ProgressStalled, "terminal annuli meet at a triple vertex");
      }
    }
  return R;
}

}  // namespace coxcell
