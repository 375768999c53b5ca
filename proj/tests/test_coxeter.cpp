#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <queue>
#include <random>
#include <set>

#include "coxcell/coxeter.hpp"
#include "coxcell/freewords.hpp"
#include "doctest.h"

using namespace coxcell;

#define CHECK_ERR(expr, err)                     \
  do {                                           \
    try {                                        \
      (void)(expr);                              \
      FAIL_CHECK("expected " << err_name(err));  \
    } catch (const Error& e) {                   \
      CHECK(e.code == err);                      \
    }                                            \
  } while (0)

namespace {

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Independent normal-form oracle: exhaustive closure of the word under
// adjacent commuting swaps and adjacent equal-pair deletions, then the
// (length, lex)-minimum.  Slow but obviously correct.
Word oracle_nf(const Polyhedron& p, const Word& w) {
  std::set<Word> seen = {w};
  std::queue<Word> q;
  q.push(w);
  Word best = w;
  while (!q.empty()) {
    Word u = q.front();
    q.pop();
    if (word_less(u, best)) best = u;
    for (size_t i = 0; i + 1 < u.size(); ++i) {
      if (u[i] == u[i + 1]) {
        Word v(u.begin(), u.begin() + i);
        v.insert(v.end(), u.begin() + i + 2, u.end());
        if (seen.insert(v).second) q.push(v);
      } else if (p.adjacent(u[i], u[i + 1])) {
        Word v = u;
        std::swap(v[i], v[i + 1]);
        if (seen.insert(v).second) q.push(v);
      }
    }
  }
  return best;
}

Word w(const Polyhedron& p, const std::vector<std::string>& ls) {
  return parse_word(p, ls);
}

}  // namespace

TEST_CASE("normal form matches the rewrite oracle on random words") {
  const Polyhedron& p = builtin_dodecahedron();
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> len(0, 10), letter(0, p.F() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    Word u(len(rng));
    for (Face& f : u) f = letter(rng);
    Word nf = normal_form(p, u);
    Word expect = oracle_nf(p, u);
    REQUIRE(nf == expect);
    // Normal form is idempotent and preserves the element.
    REQUIRE(normal_form(p, nf) == nf);
  }
}

TEST_CASE("lex-least linearization needs the topological sort") {
  const Polyhedron& p = builtin_dodecahedron();
  // L3 and T do not commute; U2 commutes with both.  Local adjacent-swap
  // minimization would stall on [L3,T,U2]; the true least form hoists U2.
  Word in = w(p, {"L3", "T", "U2"});
  CHECK(normal_form(p, in) == w(p, {"U2", "L3", "T"}));
  CHECK(oracle_nf(p, in) == w(p, {"U2", "L3", "T"}));
}

TEST_CASE("known normal forms") {
  const Polyhedron& p = builtin_dodecahedron();
  CHECK(normal_form(p, w(p, {"U1", "U2", "U1", "L4"})) == w(p, {"U2", "L4"}));
  CHECK(normal_form(p, w(p, {"T", "T"})).empty());
  CHECK(normal_form(p, w(p, {"T", "B", "T", "B"})) == w(p, {"T", "B", "T", "B"}));
  CHECK(multiply(p, w(p, {"T", "B"}), w(p, {"B", "T"})).empty());
}

TEST_CASE("inverse and equality") {
  const Polyhedron& p = builtin_dodecahedron();
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> len(0, 10), letter(0, p.F() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    Word u(len(rng));
    for (Face& f : u) f = letter(rng);
    CHECK(multiply(p, u, inverse(u)).empty());
    CHECK(equal_words(p, u, normal_form(p, u)));
  }
}

TEST_CASE("cyclic reduction") {
  const Polyhedron& p = builtin_dodecahedron();
  auto r1 = cyclically_reduce(p, w(p, {"T", "B", "T"}));
  CHECK(r1.conjugator == w(p, {"T"}));
  CHECK(r1.core == w(p, {"B"}));
  auto r2 = cyclically_reduce(p, w(p, {"U1", "U2", "U1", "L4"}));
  CHECK(r2.conjugator.empty());
  CHECK(r2.core == w(p, {"U2", "L4"}));
  // w = c * core * c^-1 must hold on random words.
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> len(0, 10), letter(0, p.F() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    Word u(len(rng));
    for (Face& f : u) f = letter(rng);
    auto r = cyclically_reduce(p, u);
    Word back = multiply(p, r.conjugator, multiply(p, r.core, inverse(r.conjugator)));
    CHECK(back == normal_form(p, u));
    // The core is cyclically reduced: reducing again is a no-op.
    CHECK(cyclically_reduce(p, r.core).core == r.core);
  }
}

TEST_CASE("element orders") {
  const Polyhedron& p = builtin_dodecahedron();
  CHECK(element_order(p, {}) == Order::Identity);
  CHECK(element_order(p, w(p, {"T"})) == Order::Two);
  CHECK(element_order(p, w(p, {"T", "U1"})) == Order::Two);
  CHECK(element_order(p, w(p, {"T", "U1", "U2"})) == Order::Two);
  CHECK(element_order(p, w(p, {"T", "B"})) == Order::Infinite);
  CHECK(element_order(p, w(p, {"T", "B", "T"})) == Order::Two);
  CHECK(element_order(p, w(p, {"U1", "L3"})) == Order::Infinite);
}

TEST_CASE("cyclic canonical form separates conjugacy classes") {
  const Polyhedron& p = builtin_dodecahedron();
  Word tb = w(p, {"T", "B"});
  CHECK(cyclic_canonical(p, w(p, {"B", "T"})) == cyclic_canonical(p, tb));
  CHECK(conjugate_in_group(p, w(p, {"U2", "T", "B", "U2"}), tb));
  CHECK_FALSE(conjugate_in_group(p, w(p, {"U1", "L3"}), tb));
  // Conjugating by random elements never changes the class.
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> len(0, 8), letter(0, p.F() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    Word g(len(rng));
    for (Face& f : g) f = letter(rng);
    Word conj = multiply(p, g, multiply(p, tb, inverse(g)));
    CHECK(conjugate_in_group(p, conj, tb));
  }
}

TEST_CASE("free words") {
  CHECK(free_reduce({1, -1}).empty());
  CHECK(free_reduce({1, 2, -2, -1}).empty());
  CHECK(free_mul({1, 2}, {-2, 3}) == FreeWord{1, 3});
  CHECK(free_inv({1, -2}) == FreeWord{2, -1});
  CHECK(cyclic_free_reduce({1, 2, -1}) == FreeWord{2});
  CHECK(cyclic_free_canonical({2, 1}) == FreeWord{1, 2});
  CHECK(free_conjugate({1, 2}, {2, 1}));
  CHECK_FALSE(free_conjugate({1, 2}, {2, -1}));
  CHECK(free_str({1, -2}) == "x1.x2^-1");

  const Polyhedron& p = builtin_dodecahedron();
  std::vector<Word> gens = {w(p, {"T", "B"}), w(p, {"U1", "L3"})};
  CHECK(gamma_image(p, gens, {1}) == w(p, {"T", "B"}));
  CHECK(gamma_image(p, gens, {1, -1}).empty());
  CHECK(gamma_image(p, gens, {1, 2}) == multiply(p, gens[0], gens[1]));
}

TEST_CASE("letters out of range") {
  const Polyhedron& p = builtin_dodecahedron();
  CHECK_ERR(normal_form(p, {42}), Err::UnknownFace);
  CHECK_ERR(p.face("Q9"), Err::UnknownFace);
}
