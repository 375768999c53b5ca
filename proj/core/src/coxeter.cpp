#include "coxcell/coxeter.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace coxcell {

namespace {

// Appends one letter to a geodesic, keeping it geodesic (exchange/deletion
// property of right-angled Coxeter groups): x cancels against an equal letter
// it can reach by commuting past adjacent-face letters only.
void append_letter(const Polyhedron& p, Word& g, Face x) {
  for (int j = static_cast<int>(g.size()) - 1; j >= 0; --j) {
    if (g[j] == x) {
      g.erase(g.begin() + j);
      return;
    }
    if (!p.adjacent(g[j], x)) break;
  }
  g.push_back(x);
}

// Positions i<j are order-constrained iff the letters are equal or do not
// commute.  The lex-least linearization of that partial order is obtained
// greedily: always emit the least available letter.
Word lex_least(const Polyhedron& p, const Word& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g[i] == g[j] || !p.adjacent(g[i], g[j])) {
        succ[i].push_back(j);
        ++indeg[j];
      }
  std::set<std::pair<Face, int>> avail;  // (letter, position)
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) avail.insert({g[i], i});
  Word out;
  out.reserve(n);
  while (!avail.empty()) {
    auto [f, i] = *avail.begin();
    avail.erase(avail.begin());
    out.push_back(f);
    for (int j : succ[i])
      if (--indeg[j] == 0) avail.insert({g[j], j});
  }
  return out;
}

bool dependent(const Polyhedron& p, Face a, Face b) {
  return a == b || !p.adjacent(a, b);
}

}  // namespace

Word normal_form(const Polyhedron& p, const Word& w) {
  Word g;
  g.reserve(w.size());
  for (Face x : w) {
    if (x < 0 || x >= p.F()) fail(Err::UnknownFace, "letter index out of range");
    append_letter(p, g, x);
  }
  return lex_least(p, g);
}

Word multiply(const Polyhedron& p, const Word& a, const Word& b) {
  Word ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return normal_form(p, ab);
}

Word inverse(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

bool equal_words(const Polyhedron& p, const Word& a, const Word& b) {
  return normal_form(p, a) == normal_form(p, b);
}

CyclicReduction cyclically_reduce(const Polyhedron& p, const Word& w) {
  Word core = normal_form(p, w);
  Word conj;
  for (;;) {
    const int n = static_cast<int>(core.size());
    // A letter is first-exposed (resp. last-exposed) if no earlier (later)
    // position constrains it; conjugating by such a letter cancels both ends.
    std::vector<char> is_min(n, 1), is_max(n, 1);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (dependent(p, core[i], core[j])) {
          is_min[j] = 0;
          is_max[i] = 0;
        }
    Face pick = -1;
    for (Face f = 0; f < p.F() && pick < 0; ++f) {
      int imin = -1, imax = -1;
      for (int i = 0; i < n; ++i)
        if (core[i] == f) {
          if (is_min[i] && imin < 0) imin = i;
          if (is_max[i]) imax = i;
        }
      if (imin >= 0 && imax >= 0 && imin != imax) pick = f;
    }
    if (pick < 0) break;
    Word t;
    t.push_back(pick);
    t.insert(t.end(), core.begin(), core.end());
    t.push_back(pick);
    Word next = normal_form(p, t);
    if (next.size() + 2 != core.size())
      throw std::logic_error("cyclic reduction did not shorten");
    core = next;
    conj.push_back(pick);
  }
  return {normal_form(p, conj), core};
}

Order element_order(const Polyhedron& p, const Word& w) {
  Word core = cyclically_reduce(p, w).core;
  if (core.empty()) return Order::Identity;
  for (size_t i = 0; i < core.size(); ++i)
    for (size_t j = i + 1; j < core.size(); ++j)
      if (dependent(p, core[i], core[j])) return Order::Infinite;
  // Distinct pairwise-commuting involutions: the element squares to identity.
  return Order::Two;
}

Word cyclic_canonical(const Polyhedron& p, const Word& core_in) {
  Word start = cyclically_reduce(p, core_in).core;
  if (start.empty()) return {};
  auto better = [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size()
                                : std::lexicographical_compare(a.begin(), a.end(),
                                                               b.begin(), b.end());
  };
  std::set<Word> seen = {start};
  std::queue<Word> q;
  q.push(start);
  Word best = start;
  while (!q.empty()) {
    Word w = q.front();
    q.pop();
    Word r(w.begin() + 1, w.end());
    r.push_back(w.front());
    Word rn = cyclically_reduce(p, r).core;
    if (seen.insert(rn).second) {
      if (better(rn, best)) best = rn;
      q.push(rn);
    }
  }
  return best;
}

bool conjugate_in_group(const Polyhedron& p, const Word& a, const Word& b) {
  return cyclic_canonical(p, cyclically_reduce(p, a).core) ==
         cyclic_canonical(p, cyclically_reduce(p, b).core);
}

std::string word_str(const Polyhedron& p, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += p.labels[w[i]];
  }
  return s;
}

Word parse_word(const Polyhedron& p, const std::vector<std::string>& letters) {
  Word w;
  w.reserve(letters.size());
  for (const auto& l : letters) w.push_back(p.face(l));
  return w;
}

}  // namespace coxcell
