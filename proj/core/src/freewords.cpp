#include "coxcell/freewords.hpp"

#include <algorithm>

namespace coxcell {

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (int x : w) {
    if (x == 0) throw std::logic_error("zero letter in free word");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

FreeWord free_inv(const FreeWord& w) {
  FreeWord out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

FreeWord free_mul(const FreeWord& a, const FreeWord& b) {
  FreeWord ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  return free_reduce(ab);
}

FreeWord cyclic_free_reduce(FreeWord w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

FreeWord cyclic_free_canonical(const FreeWord& w) {
  FreeWord c = cyclic_free_reduce(w);
  if (c.empty()) return c;
  FreeWord best = c;
  FreeWord r = c;
  for (size_t i = 1; i < c.size(); ++i) {
    std::rotate(r.begin(), r.begin() + 1, r.end());
    if (r < best) best = r;
  }
  return best;
}

bool free_conjugate(const FreeWord& a, const FreeWord& b) {
  return cyclic_free_canonical(a) == cyclic_free_canonical(b);
}

Word gamma_image(const Polyhedron& p, const std::vector<Word>& gens, const FreeWord& w) {
  Word out;
  for (int x : w) {
    int j = std::abs(x) - 1;
    if (j < 0 || j >= static_cast<int>(gens.size()))
      throw std::logic_error("free-word letter out of range");
    // Generator images have infinite order; inverse is the reversed word.
    out = multiply(p, out, x > 0 ? gens[j] : inverse(gens[j]));
  }
  return out;
}

std::string free_str(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ".";
    s += "x" + std::to_string(std::abs(w[i]));
    if (w[i] < 0) s += "^-1";
  }
  return s;
}

}  // namespace coxcell
