#pragma once

#include <string>
#include <vector>

#include "coxcell/polyhedron.hpp"

namespace coxcell {

// A word in the face reflections; each letter is a face index.  Letters are
// involutions; distinct letters commute exactly when the faces are adjacent.
using Word = std::vector<Face>;

// Lexicographically least geodesic representative.  Two words represent the
// same group element iff their normal forms are identical.
Word normal_form(const Polyhedron& p, const Word& w);
Word multiply(const Polyhedron& p, const Word& a, const Word& b);
Word inverse(Word w);  // reverse (letters are involutions)
bool equal_words(const Polyhedron& p, const Word& a, const Word& b);

struct CyclicReduction {
  Word conjugator;  // c, in normal form
  Word core;        // cyclically reduced; w = c * core * c^-1
};
CyclicReduction cyclically_reduce(const Polyhedron& p, const Word& w);

enum class Order { Identity, Two, Infinite };
Order element_order(const Polyhedron& p, const Word& w);

// Canonical representative of the rotation class of a cyclically reduced
// word: the minimum normal form over the closure under single rotations.
Word cyclic_canonical(const Polyhedron& p, const Word& core);
bool conjugate_in_group(const Polyhedron& p, const Word& a, const Word& b);

std::string word_str(const Polyhedron& p, const Word& w);
Word parse_word(const Polyhedron& p, const std::vector<std::string>& letters);

}  // namespace coxcell
