#pragma once

#include <string>
#include <vector>

#include "coxcell/coxeter.hpp"

namespace coxcell {

// Word in an abstract free group: letter +-(j+1) means generator j (inverse
// when negative).  Kept freely reduced by the operations below.
using FreeWord = std::vector<int>;

FreeWord free_reduce(const FreeWord& w);
FreeWord free_inv(const FreeWord& w);
FreeWord free_mul(const FreeWord& a, const FreeWord& b);
FreeWord cyclic_free_reduce(FreeWord w);
// Least rotation of the cyclic reduction: equal iff conjugate in the free group.
FreeWord cyclic_free_canonical(const FreeWord& w);
bool free_conjugate(const FreeWord& a, const FreeWord& b);

// Image in the reflection group under generator j |-> gens[j].
Word gamma_image(const Polyhedron& p, const std::vector<Word>& gens, const FreeWord& w);

std::string free_str(const FreeWord& w);  // e.g. "x1.x2^-1", "1" when empty

}  // namespace coxcell
