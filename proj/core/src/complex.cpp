#include "coxcell/complex.hpp"

#include "coxcell/boundary.hpp"
#include "coxcell/errors.hpp"

namespace coxcell {

int TileComplex::add_tile(Word label) {
  Tile t;
  t.label = normal_form(P(), label);
  t.glue.resize(P().F());
  tiles.push_back(std::move(t));
  return int(tiles.size()) - 1;
}

static void check_one_gluing(const TileComplex& c, int t, Face f) {
  const Gluing& g = c.tiles[t].glue[f];
  int u = g.to;
  if (u < 0 || u >= int(c.tiles.size()))
    fail(Err::InvalidGluing, "gluing target out of range");
  if (u == t) fail(Err::InvalidGluing, "tile glued to itself");
  const Gluing& back = c.tiles[u].glue[f];
  if (back.to != t) fail(Err::InvalidGluing, "gluing not involutive");
  if (free_reduce(back.phi) != free_inv(g.phi))
    fail(Err::InvalidGluing, "reverse decoration is not the inverse");
  // label coherence: label(t) * s_f == image(phi) * label(u)
  Word lhs = multiply(c.P(), c.tiles[t].label, Word{f});
  Word rhs = multiply(c.P(), gamma_image(c.P(), c.gens, g.phi), c.tiles[u].label);
  if (lhs != rhs)
    fail(Err::InvalidGluing, "label coherence broken at tile " + std::to_string(t) +
                                 " face " + c.P().label(f));
}

void TileComplex::add_gluing(int t, Face f, int u, const FreeWord& phi) {
  if (t < 0 || t >= int(tiles.size()) || u < 0 || u >= int(tiles.size()))
    fail(Err::InvalidGluing, "tile index out of range");
  if (f < 0 || f >= P().F()) fail(Err::InvalidGluing, "face index out of range");
  if (t == u) fail(Err::InvalidGluing, "tile glued to itself");
  if (tiles[t].glued(f) || tiles[u].glued(f))
    fail(Err::InvalidGluing, "face already glued");
  tiles[t].glue[f] = Gluing{u, free_reduce(phi)};
  tiles[u].glue[f] = Gluing{t, free_inv(phi)};
  check_one_gluing(*this, t, f);
}

void TileComplex::check_coherent() const {
  for (int t = 0; t < int(tiles.size()); ++t) {
    if (normal_form(P(), tiles[t].label) != tiles[t].label)
      fail(Err::InvalidGluing, "tile label not in normal form");
    for (Face f = 0; f < P().F(); ++f)
      if (tiles[t].glued(f)) check_one_gluing(*this, t, f);
  }
}

int TileComplex::gluing_count() const {
  int n = 0;
  for (const Tile& t : tiles)
    for (const Gluing& g : t.glue)
      if (g.to >= 0) ++n;
  // every gluing is stored from both sides
  return n / 2;
}

EulerCounts euler_invariants(const TileComplex& c) { return build_boundary(c).euler; }

}  // namespace coxcell
