#pragma once

#include <set>
#include <utility>
#include <vector>

#include "cmtorsion/arith/zpoly.hpp"

namespace cmt {

// Irreducible factors over Z of a primitive squarefree polynomial, sorted by
// degree and then coefficients (highest first).
std::vector<ZPoly> factor_squarefree_Z(const ZPoly& f);

struct SmallFactors {
    std::vector<ZPoly> factors;  // every irreducible factor of degree <= max_degree
    ZPoly cofactor;              // no factor of degree <= max_degree
};
// Finds all irreducible factors of degree at most max_degree of a primitive
// squarefree polynomial without completing the factorization.
SmallFactors small_factors_Z(const ZPoly& f, int max_degree);

// Degrees that a factor over Q could have, from the intersection of
// subset sums of modular degree patterns at several primes.
std::set<int> possible_factor_degrees(const ZPoly& f, int primes = 6);

// Factorization over Q: irreducible, integer-primitive factors with positive
// leading coefficient and their multiplicities, ordered by degree then
// coefficients. The product equals p up to a rational unit.
std::vector<std::pair<UniPoly, int>> factor_over_Q(const UniPoly& p);

}  // namespace cmt
