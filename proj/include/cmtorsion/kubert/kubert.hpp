#pragma once

#include <stdexcept>
#include <vector>

#include "cmtorsion/arith/bipoly.hpp"
#include "cmtorsion/arith/ratfunc.hpp"
#include "cmtorsion/kubert/curve.hpp"

namespace cmt {

// Nonsingular E(b, c); throws std::domain_error on a singular pair.
template <class F>
Weierstrass<F> kubert_curve(const F& b, const F& c) {
    auto E = Weierstrass<F>::kubert(b, c);
    if (E.is_singular()) throw std::domain_error("singular Kubert curve");
    return E;
}

// j = n_j / d_j with
//   n_j = (16b^2 + 8b(1 - c)(c + 2) + (1 - c)^4)^3,
//   d_j = b^3 (16b^2 - b(8c^2 + 20c - 1) - c(1 - c)^3).
const ZBiPoly& j_numerator();
const ZBiPoly& j_denominator();
// 16b^2 + 8b(1 - c)(c + 2) + (1 - c)^4, the cube root of n_j.
const ZBiPoly& base_quartic();

template <class F>
F j_of_bc(const F& b, const F& c) {
    F one(1);
    F u = one - c;
    F g = F(16) * b * b + F(8) * b * u * (c + F(2)) + u * u * u * u;
    F d = b * b * b * (F(16) * b * b - b * (F(8) * c * c + F(20) * c - one) - c * u * u * u);
    if (is_zero(d)) throw std::domain_error("singular Kubert curve");
    return g * g * g / d;
}

// Division values psi_k((0,0)) on E(b, c) over Z[b, c], k = 0..n.
std::vector<ZBiPoly> kubert_division_values(int n);
// x([m](0,0)) over Q(b, c) in lowest terms.
RationalFunction kubert_multiple_x(int m);

// f_N = n1 d2 - n2 d1 from x([ceil(N/2) - 1](0,0)) = n1/d1 and
// x([floor(N/2) + 1](0,0)) = n2/d2; integer-primitive with positive
// lex-leading coefficient. Memoized.
const ZBiPoly& compute_fN(int N);
// phi_3 = b, and phi_N = f_N / prod_{3 <= d < N, d | N} phi_d. Memoized.
const ZBiPoly& compute_phiN(int N);

// Exponent e with b^e exactly dividing psi_N((0,0)) in Z[b, c].
int kubert_b_valuation(int N);

}  // namespace cmt
