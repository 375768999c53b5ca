#include "coxcell/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace coxcell {

Face Polyhedron::face(const std::string& label) const {
  Face f = face_or_neg(label);
  if (f < 0) fail(Err::UnknownFace, "no face named '" + label + "' in " + name);
  return f;
}

Face Polyhedron::face_or_neg(const std::string& label) const {
  for (int i = 0; i < F(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

int Polyhedron::edge_id(Face a, Face b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(a, b));
  if (it == edges.end() || *it != std::make_pair(a, b)) return -1;
  return static_cast<int>(it - edges.begin());
}

int Polyhedron::vertex_id(Face a, Face b, Face c) const {
  std::array<Face, 3> k = {a, b, c};
  std::sort(k.begin(), k.end());
  for (int i = 0; i < V(); ++i) {
    std::array<Face, 3> v = verts[i];
    std::sort(v.begin(), v.end());
    if (v == k) return i;
  }
  return -1;
}

Polyhedron make_polyhedron(std::string name, std::vector<std::string> labels,
                           const std::vector<std::array<std::string, 3>>& triples) {
  Polyhedron p;
  p.name = std::move(name);
  p.labels = std::move(labels);
  const int F = p.F();

  {
    std::set<std::string> seen;
    for (const auto& l : p.labels) {
      if (l.empty()) fail(Err::UnknownFace, "empty face label in " + p.name);
      if (!seen.insert(l).second)
        fail(Err::UnknownFace, "duplicate face label '" + l + "' in " + p.name);
    }
  }

  for (const auto& t : triples) {
    std::array<Face, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = p.face(t[i]);
    if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2])
      fail(Err::NonTrivalentVertex,
           "vertex {" + t[0] + "," + t[1] + "," + t[2] + "} repeats a face");
    p.verts.push_back(v);
  }

  // Two faces are adjacent iff they share exactly two vertices (one edge).
  // Any other nonzero overlap means the pair meets along more than one edge
  // or in an isolated vertex; both break the polytope structure.
  std::vector<std::vector<int>> shared(F, std::vector<int>(F, 0));
  for (const auto& v : p.verts)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        ++shared[v[i]][v[j]];
        ++shared[v[j]][v[i]];
      }
  p.adj.assign(F, std::vector<char>(F, 0));
  for (int a = 0; a < F; ++a)
    for (int b = a + 1; b < F; ++b) {
      if (shared[a][b] == 0) continue;
      if (shared[a][b] != 2)
        fail(Err::MultiEdge, "faces " + p.labels[a] + "," + p.labels[b] + " share " +
                                 std::to_string(shared[a][b]) + " vertices, expected 2");
      p.adj[a][b] = p.adj[b][a] = 1;
      p.edges.emplace_back(a, b);
    }
  std::sort(p.edges.begin(), p.edges.end());

  // Walk each face boundary: at vertex {f,y,z} the f-edge (f,y) continues as
  // (f,z).  The edges of f must close into a single cycle of length >= 5.
  p.ring.assign(F, {});
  for (Face f = 0; f < F; ++f) {
    std::map<Face, std::vector<Face>> next;  // neighbor y -> {z at the two endpoints}
    int deg = 0;
    for (const auto& v : p.verts) {
      int pos = -1;
      for (int i = 0; i < 3; ++i)
        if (v[i] == f) pos = i;
      if (pos < 0) continue;
      Face y = v[(pos + 1) % 3], z = v[(pos + 2) % 3];
      next[y].push_back(z);
      next[z].push_back(y);
      ++deg;
    }
    if (next.empty()) fail(Err::FaceTooSmall, "face " + p.labels[f] + " has no vertices");
    for (const auto& [y, zs] : next)
      if (zs.size() != 2)
        fail(Err::MultiEdge, "edge {" + p.labels[f] + "," + p.labels[y] + "} has " +
                                 std::to_string(zs.size()) + " endpoints, expected 2");
    Face start = next.begin()->first;
    std::vector<Face> cyc = {start};
    Face prev = start;
    Face cur = next[start][0];
    while (cur != start) {
      cyc.push_back(cur);
      const auto& zs = next[cur];
      Face nxt = (zs[0] == prev) ? zs[1] : zs[0];
      prev = cur;
      cur = nxt;
    }
    if (static_cast<int>(cyc.size()) != static_cast<int>(next.size()))
      fail(Err::MultiEdge, "boundary of face " + p.labels[f] + " is not a single cycle");
    if (static_cast<int>(cyc.size()) != deg)
      fail(Err::MultiEdge, "boundary of face " + p.labels[f] + " is not a single cycle");
    if (cyc.size() < 5)
      fail(Err::FaceTooSmall, "face " + p.labels[f] + " has only " +
                                  std::to_string(cyc.size()) + " sides, need >= 5");
    p.ring[f] = cyc;
  }

  if (p.V() - p.E() + F != 2)
    fail(Err::EulerViolation, p.name + ": V-E+F = " +
                                  std::to_string(p.V() - p.E() + F) + ", expected 2");

  {
    std::vector<char> seen(F, 0);
    std::vector<Face> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      Face f = stack.back();
      stack.pop_back();
      for (Face g = 0; g < F; ++g)
        if (p.adj[f][g] && !seen[g]) {
          seen[g] = 1;
          stack.push_back(g);
        }
    }
    for (Face f = 0; f < F; ++f)
      if (!seen[f]) fail(Err::Disconnected, "face " + p.labels[f] + " unreachable");
  }

  std::vector<Face> circ = find_prismatic_circuit(p.adj, p.verts);
  if (!circ.empty()) {
    std::string who;
    for (Face f : circ) who += (who.empty() ? "" : ",") + p.labels[f];
    fail(Err::PrismaticCircuit, "faces " + who + " form a prismatic " +
                                    std::to_string(circ.size()) + "-circuit");
  }

  return p;
}

std::vector<Face> find_prismatic_circuit(const std::vector<std::vector<char>>& adj,
                                         const std::vector<std::array<Face, 3>>& verts) {
  const int F = static_cast<int>(adj.size());
  auto has_vertex = [&](Face a, Face b, Face c) {
    for (const auto& v : verts) {
      bool fa = false, fb = false, fc = false;
      for (Face f : v) {
        fa |= f == a;
        fb |= f == b;
        fc |= f == c;
      }
      if (fa && fb && fc) return true;
    }
    return false;
  };
  // Three pairwise-adjacent faces must share a vertex.
  for (Face a = 0; a < F; ++a)
    for (Face b = a + 1; b < F; ++b)
      for (Face c = b + 1; c < F; ++c)
        if (adj[a][b] && adj[b][c] && adj[a][c] && !has_vertex(a, b, c))
          return {a, b, c};
  // No 4-cycle of faces with both opposite pairs non-adjacent.
  for (Face a = 0; a < F; ++a)
    for (Face b = 0; b < F; ++b)
      for (Face c = 0; c < F; ++c)
        for (Face d = 0; d < F; ++d) {
          if (!(a < b && a < c && a < d && b < d)) continue;  // canonical rep
          if (b == c || c == d) continue;
          if (adj[a][b] && adj[b][c] && adj[c][d] && adj[d][a] && !adj[a][c] &&
              !adj[b][d])
            return {a, b, c, d};
        }
  return {};
}

Polyhedron polyhedron_from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::UnknownFace, std::string("polyhedron JSON parse error: ") + e.what());
  }
  if (!j.contains("name") || !j.contains("faces") || !j.contains("vertices"))
    fail(Err::UnknownFace, "polyhedron JSON needs name/faces/vertices");
  std::vector<std::string> labels = j["faces"].get<std::vector<std::string>>();
  std::vector<std::array<std::string, 3>> triples;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 3)
      fail(Err::NonTrivalentVertex, "vertex entry is not a triple");
    triples.push_back({v[0].get<std::string>(), v[1].get<std::string>(),
                       v[2].get<std::string>()});
  }
  return make_polyhedron(j["name"].get<std::string>(), std::move(labels), triples);
}

std::string polyhedron_to_json(const Polyhedron& p) {
  nlohmann::ordered_json j;
  j["name"] = p.name;
  j["faces"] = p.labels;
  auto verts = nlohmann::ordered_json::array();
  for (const auto& v : p.verts)
    verts.push_back({p.labels[v[0]], p.labels[v[1]], p.labels[v[2]]});
  j["vertices"] = verts;
  return j.dump(2) + "\n";
}

const Polyhedron& builtin_dodecahedron() {
  static const Polyhedron dodeca = [] {
    std::vector<std::string> labels = {"T", "U1", "U2", "U3", "U4", "U5",
                                       "L1", "L2", "L3", "L4", "L5", "B"};
    auto U = [](int i) { return "U" + std::to_string((i - 1) % 5 + 1); };
    auto L = [](int i) { return "L" + std::to_string((i - 1) % 5 + 1); };
    std::vector<std::array<std::string, 3>> t;
    for (int i = 1; i <= 5; ++i) t.push_back({"T", U(i), U(i + 1)});
    for (int i = 1; i <= 5; ++i) t.push_back({U(i), U(i + 1), L(i + 1)});
    for (int i = 1; i <= 5; ++i) t.push_back({L(i), L(i + 1), U(i)});
    for (int i = 1; i <= 5; ++i) t.push_back({"B", L(i), L(i + 1)});
    return make_polyhedron("dodecahedron", std::move(labels), t);
  }();
  return dodeca;
}

}  // namespace coxcell
