#pragma once

#include <utility>
#include <vector>

#include "cmtorsion/arith/poly.hpp"

namespace cmt {

using ZPoly = Poly<BigInt>;
using UniPoly = Poly<Rational>;

BigInt content(const ZPoly& a);
// Primitive part with positive leading coefficient.
ZPoly primitive_part(const ZPoly& a);
// Integer-primitive multiple of a with positive leading coefficient.
ZPoly clear_denominators(const UniPoly& a);
UniPoly to_rational(const ZPoly& a);
ZPoly to_integer(const UniPoly& a);  // requires integral coefficients
UniPoly monic(const UniPoly& a);

// Primitive gcd with positive leading coefficient, times the gcd of the contents.
ZPoly gcd_Z(const ZPoly& a, const ZPoly& b);
// Monic gcd over Q.
UniPoly gcd_Q(const UniPoly& a, const UniPoly& b);

// Squarefree decomposition of a primitive polynomial: pairs (g_i, i) with
// f = prod g_i^i up to sign; each g_i primitive, positive leading coefficient.
std::vector<std::pair<ZPoly, int>> squarefree_Z(const ZPoly& f);

ZPoly ipow(const ZPoly& a, unsigned e);

}  // namespace cmt
