#include "coxcell/orbifold.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "coxcell/coxeter.hpp"
#include "coxcell/errors.hpp"
#include "coxcell/freewords.hpp"

namespace coxcell {

Rat make_rat(long long num, long long den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

std::string rat_str(const Rat& r) {
  std::string s = std::to_string(r.num);
  if (r.den != 1) s += "/" + std::to_string(r.den);
  return s;
}

namespace {

int uf_find(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Euler count of one complement side over the coarse cells: merged faces are
// disks, so only walk edges and their endpoint classes enter.
int side_chi(const BoundaryComplex& b, const std::vector<int>& side, int s, int nFaces) {
  std::set<int> verts;
  int E = 0;
  for (const BEdge& e : b.edges) {
    if (e.flat()) continue;
    if (side[e.face0] != s && side[e.face1] != s) continue;
    ++E;
    verts.insert(e.v0);
    verts.insert(e.v1);
  }
  return int(verts.size()) - E + nFaces;
}

std::vector<int> circle_edges(const BoundaryComplex& b, const std::vector<int>& side,
                              const std::set<int>& annFaces, int s) {
  std::vector<int> es;
  for (int e = 0; e < int(b.edges.size()); ++e) {
    const BEdge& be = b.edges[e];
    if (be.flat()) continue;
    const bool a0 = annFaces.count(be.face0) > 0, a1 = annFaces.count(be.face1) > 0;
    const bool c0 = side[be.face0] == s, c1 = side[be.face1] == s;
    if ((a0 && c1) || (a1 && c0)) es.push_back(e);
  }
  return es;
}

// Walks a claimed circle; returns the edges in cyclic order, or empty if the
// edge set is not a single closed cycle.
std::vector<int> walk_cycle(const BoundaryComplex& b, const std::vector<int>& es) {
  if (es.empty()) return {};
  std::map<int, std::vector<int>> at;
  for (int e : es) {
    at[b.edges[e].v0].push_back(e);
    at[b.edges[e].v1].push_back(e);
  }
  for (auto& [v, l] : at)
    if (l.size() != 2) return {};
  std::vector<int> order;
  std::set<int> seen;
  int cur = es.front(), fromV = b.edges[cur].v0;
  while (seen.insert(cur).second) {
    order.push_back(cur);
    const int nextV = b.edges[cur].v0 == fromV ? b.edges[cur].v1 : b.edges[cur].v0;
    const auto& l = at[nextV];
    cur = l[0] == cur ? l[1] : l[0];
    fromV = nextV;
  }
  if (order.size() != es.size()) return {};
  return order;
}

// Chart transport across a boundary edge, entering from `fromPiece`'s side;
// multiplies the deck word accumulated so far and returns the arrival piece.
int cross_edge(const TileComplex& c, const BoundaryComplex& b, int e, int fromPiece,
               FreeWord& delta) {
  const BEdge& be = b.edges[e];
  const bool fwd = be.piece0 == fromPiece;
  const Face boundaryF = b.pieces[fromPiece].face;
  int tile = b.pieces[fromPiece].tile;
  for (int i = 0; i + 1 < be.dihedral; ++i) {
    const Sector& s = be.chain[fwd ? i : be.dihedral - 1 - i];
    const Face crossF = i % 2 == 0 ? (s.a == boundaryF ? s.b : s.a) : boundaryF;
    const Gluing& g = c.tiles[tile].glue[crossF];
    delta = free_mul(delta, g.phi);
    tile = g.to;
  }
  return fwd ? be.piece1 : be.piece0;
}

// Transport within one merged face, from one piece to another across its
// interior flats.  Faces are disks, so the deck word is path-independent.
int face_walk(const TileComplex& c, const BoundaryComplex& b, int face, int from, int to,
              FreeWord& delta) {
  if (from == to) return to;
  std::map<int, std::vector<std::pair<int, int>>> adj;  // piece -> (edge, other)
  for (int e : b.faces[face].flats) {
    adj[b.edges[e].piece0].push_back({e, b.edges[e].piece1});
    adj[b.edges[e].piece1].push_back({e, b.edges[e].piece0});
  }
  std::map<int, std::pair<int, int>> parent;  // piece -> (prev piece, via edge)
  std::vector<int> q{from};
  parent[from] = {-1, -1};
  for (size_t h = 0; h < q.size() && !parent.count(to); ++h)
    for (auto [e, nx] : adj[q[h]])
      if (parent.emplace(nx, std::make_pair(q[h], e)).second) q.push_back(nx);
  if (!parent.count(to))
    fail(Err::DiskCheckFailed, "merged face pieces are not flat-connected");
  std::vector<int> path;
  for (int at = to; parent[at].first >= 0; at = parent[at].first)
    path.push_back(parent[at].second);
  std::reverse(path.begin(), path.end());
  int cur = from;
  for (int e : path) cur = cross_edge(c, b, e, cur, delta);
  return cur;
}

}  // namespace

MirroredOrbifold attach_mirrors(const TileComplex& c, const BoundaryComplex& b,
                                const std::vector<FaceAnnulus>& annuli,
                                const CurveSystem& cs) {
  MirroredOrbifold m;
  m.cx = &c;
  m.b = &b;
  m.annuli = annuli;
  for (const FaceAnnulus& a : annuli) {
    m.classes.push_back(cs.curves.at(a.curve).cls);
    for (int f : a.faces) m.mirrored.insert(f);
  }

  const int nF = int(b.faces.size());
  std::vector<int> par(nF);
  std::iota(par.begin(), par.end(), 0);
  for (const BEdge& e : b.edges) {
    if (e.flat()) continue;
    if (m.mirrored.count(e.face0) || m.mirrored.count(e.face1)) continue;
    par[uf_find(par, e.face0)] = uf_find(par, e.face1);
  }
  std::map<int, std::vector<int>> comps;
  for (int f = 0; f < nF; ++f)
    if (!m.mirrored.count(f)) comps[uf_find(par, f)].push_back(f);
  if (comps.size() != 2)
    fail(Err::NotTwoComponents,
         "mirror complement has " + std::to_string(comps.size()) + " components");
  auto it = comps.begin();
  auto jt = std::next(it);
  const bool firstIsBase = it->second.front() < jt->second.front();
  m.comp0 = firstIsBase ? it->second : jt->second;
  m.comp1 = firstIsBase ? jt->second : it->second;

  std::vector<int> side(nF, 2);
  for (int f : m.comp0) side[f] = 0;
  for (int f : m.comp1) side[f] = 1;

  // each side must meet every vertex in one contiguous fan
  for (int s = 0; s < 2; ++s) {
    std::map<int, int> trans;
    for (const BEdge& e : b.edges) {
      if (e.flat()) continue;
      if ((side[e.face0] == s) == (side[e.face1] == s)) continue;
      trans[e.v0]++;
      trans[e.v1]++;
    }
    for (auto [v, t] : trans)
      if (t != 2) fail(Err::NotPlanar, "complement component pinches at a vertex");
  }

  // one boundary circle per annulus on each side, and nothing else
  const int n = int(annuli.size());
  std::vector<std::vector<int>> baseCycles(n);
  for (int i = 0; i < n; ++i) {
    std::set<int> af(annuli[i].faces.begin(), annuli[i].faces.end());
    for (int s = 0; s < 2; ++s) {
      std::vector<int> cyc = walk_cycle(b, circle_edges(b, side, af, s));
      if (cyc.empty())
        fail(Err::CircleCountMismatch,
             "annulus " + std::to_string(i) + " does not trace one circle on side " +
                 std::to_string(s));
      if (s == 0) baseCycles[i] = cyc;
    }
  }

  // planarity by Euler count: chi + circles == 2
  for (int s = 0; s < 2; ++s) {
    const int chi = side_chi(b, side, s, int(s == 0 ? m.comp0.size() : m.comp1.size()));
    if (chi + n != 2)
      fail(Err::NotPlanar, "complement component has Euler characteristic " +
                               std::to_string(chi) + " with " + std::to_string(n) +
                               " boundary circles");
  }

  // corners on the base side, aligned with the annulus face order
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& fs = annuli[i].faces;
    const int mi = int(fs.size());
    std::set<int> af(fs.begin(), fs.end());

    // the mirror-side face met by each cycle edge, compressed into runs
    const std::vector<int>& cyc = baseCycles[i];
    std::vector<int> met;
    for (int e : cyc) {
      const BEdge& be = b.edges[e];
      const int f = af.count(be.face0) ? be.face0 : be.face1;
      if (met.empty() || met.back() != f) met.push_back(f);
    }
    if (met.size() > 1 && met.front() == met.back()) met.pop_back();
    if (int(met.size()) != mi)
      fail(Err::CircleCountMismatch, "annulus " + std::to_string(i) + " meets its base circle in " +
                                         std::to_string(met.size()) + " arcs, not " +
                                         std::to_string(mi));

    // locate the corner between face j and j+1: the base-side endpoint of
    // their shared edge
    std::set<int> baseVerts;
    for (int e : cyc) {
      baseVerts.insert(b.edges[e].v0);
      baseVerts.insert(b.edges[e].v1);
    }
    std::vector<int> corner(mi, -1), cedge(mi, -1);
    for (int j = 0; j < mi; ++j) {
      const int fa = fs[j], fb = fs[(j + 1) % mi];
      for (int e = 0; e < int(b.edges.size()); ++e) {
        const BEdge& be = b.edges[e];
        if (be.flat()) continue;
        if (!((be.face0 == fa && be.face1 == fb) || (be.face0 == fb && be.face1 == fa)))
          continue;
        const bool b0 = baseVerts.count(be.v0) > 0, b1 = baseVerts.count(be.v1) > 0;
        if (b0 == b1) continue;
        corner[j] = b0 ? be.v0 : be.v1;
        cedge[j] = e;
        break;
      }
      if (corner[j] < 0)
        fail(Err::CircleCountMismatch,
             "no base-side corner between consecutive annulus faces");
    }
    m.corners.push_back(corner);
    m.cornerEdges.push_back(cedge);
    m.cornerCount += mi;
  }
  return m;
}

Rat orb_euler(const MirroredOrbifold& m) {
  const BoundaryComplex& b = *m.b;
  const int nF = int(b.faces.size());
  std::vector<int> side(nF, 2);
  for (int f : m.comp0) side[f] = 0;
  for (int f : m.comp1) side[f] = 1;
  const int chi = side_chi(b, side, 0, int(m.comp0.size()));
  Rat r = make_rat(4LL * chi - m.cornerCount, 4);
  if (r.num >= 0)
    fail(Err::NonNegativeEuler, "orbifold Euler characteristic " + rat_str(r));
  return r;
}

OrbifoldPresentation orbifold_presentation(const MirroredOrbifold& m) {
  const TileComplex& c = *m.cx;
  const BoundaryComplex& b = *m.b;
  const Polyhedron& P = *c.poly;
  const int n = int(m.annuli.size());
  const int g = n - 1;

  OrbifoldPresentation p;
  p.freeRank = g;
  for (int i = 0; i < g; ++i)
    p.gens.push_back(
        {"x" + std::to_string(i + 1), normal_form(P, gamma_image(P, c.gens, m.classes[i]))});
  p.gens.push_back({"c", normal_form(P, gamma_image(P, c.gens, m.classes[n - 1]))});
  p.mirrorStart = g + 1;
  p.circleOf.assign(p.gens.size(), -1);
  p.posOf.assign(p.gens.size(), -1);

  // Mirror images are computed walking each circle in a coherent chart: the
  // deck word delta accumulates the gluing holonomies, so consecutive mirrors
  // land in perpendicular planes and the corner relators vanish.
  std::vector<std::vector<int>> mirror(n);  // generator index per circle position
  std::vector<int> closeEps(n, 0);          // class exponent closing each circle
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& fs = m.annuli[i].faces;
    const int mi = int(fs.size());
    const int e0 = m.cornerEdges[i].back();
    int cur = b.edges[e0].face0 == fs[0] ? b.edges[e0].piece0 : b.edges[e0].piece1;
    FreeWord delta;
    std::vector<Word> images(mi);
    for (int j = 0; j < mi; ++j) {
      const PieceKey k = b.pieces[cur];
      Word w = multiply(P, gamma_image(P, c.gens, delta), c.tiles[k.tile].label);
      const Word wi = inverse(w);
      w.push_back(k.face);
      w.insert(w.end(), wi.begin(), wi.end());
      images[j] = normal_form(P, w);
      const int e = m.cornerEdges[i][j];
      const int exit = b.edges[e].face0 == fs[j] ? b.edges[e].piece0 : b.edges[e].piece1;
      cur = face_walk(c, b, fs[j], cur, exit, delta);
      cur = cross_edge(c, b, e, cur, delta);
    }

    // The loop's deck word is freely conjugate to the carried class (up to
    // direction); re-anchor the whole circle so it becomes the class exactly,
    // making the closing relator expressible over the class generator.
    FreeWord w = free_reduce(delta), pre;
    while (w.size() >= 2 && w.front() == -w.back()) {
      pre.push_back(w.front());
      w.erase(w.begin());
      w.pop_back();
    }
    FreeWord u;
    for (int sgn : {1, -1}) {
      const FreeWord target = sgn > 0 ? m.classes[i] : free_inv(m.classes[i]);
      if (target.size() != w.size()) continue;
      for (size_t k = 0; k < std::max<size_t>(target.size(), 1) && !closeEps[i]; ++k) {
        FreeWord rot(target.begin() + k, target.end());
        rot.insert(rot.end(), target.begin(), target.begin() + k);
        if (rot != w) continue;
        closeEps[i] = sgn;
        u = free_mul(pre, free_inv(FreeWord(target.begin(), target.begin() + k)));
      }
      if (closeEps[i]) break;
    }
    if (!closeEps[i])
      fail(Err::RelatorFailure,
           "circle deck word is not freely conjugate to its carried class");
    if (!u.empty()) {
      const Word U = gamma_image(P, c.gens, u);
      for (Word& im : images) {
        Word t = inverse(U);
        t.insert(t.end(), im.begin(), im.end());
        t.insert(t.end(), U.begin(), U.end());
        im = normal_form(P, t);
      }
    }

    for (int j = 0; j < mi; ++j) {
      mirror[i].push_back(int(p.gens.size()));
      p.gens.push_back(
          {"r" + std::to_string(i + 1) + "_" + std::to_string(j + 1), images[j]});
      p.circleOf.push_back(i);
      p.posOf.push_back(j);
    }
  }

  auto L = [](int gen) { return gen + 1; };  // positive letter for a generator index

  for (int i = 0; i < n; ++i)
    for (int r : mirror[i]) p.relators.push_back({L(r), L(r)});
  for (int i = 0; i < n; ++i) {
    const int mi = int(mirror[i].size());
    for (int j = 0; j + 1 < mi; ++j) {
      const int a = mirror[i][j], bb = mirror[i][j + 1];
      p.relators.push_back({L(a), L(bb), L(a), L(bb)});
    }
    // around the circle: conjugating the first mirror by the carried class
    // lines it up next to the last one
    const int ci = i < g ? i : g;  // letter of the circle's class
    const int rl = mirror[i][mi - 1], rf = mirror[i][0];
    const int cl = closeEps[i] * L(ci);
    p.relators.push_back({L(rl), cl, L(rf), -cl, L(rl), cl, L(rf), -cl});
  }
  {
    FreeWord planar;
    for (int i = 0; i <= g; ++i) planar.push_back(L(i));
    p.relators.push_back(planar);
  }

  for (const FreeWord& rel : p.relators) {
    Word w;
    for (int l : rel) {
      const Word& im = p.gens[std::abs(l) - 1].image;
      if (l > 0)
        w.insert(w.end(), im.begin(), im.end());
      else {
        const Word inv = inverse(im);
        w.insert(w.end(), inv.begin(), inv.end());
      }
    }
    if (!normal_form(P, w).empty()) {
      std::string names;
      for (int l : rel) names += (l < 0 ? " -" : " ") + p.gens[std::abs(l) - 1].name;
      fail(Err::RelatorFailure, "relator does not vanish:" + names);
    }
  }
  return p;
}

}  // namespace coxcell
