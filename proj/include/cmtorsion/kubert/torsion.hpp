#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmtorsion/kubert/curve.hpp"
#include "cmtorsion/kubert/residue.hpp"
#include "cmtorsion/numberfield/numberfield.hpp"

namespace cmt {

// Z/N + Z/n with n | N, together with generators of orders N and n (the
// second one only when n > 1).
template <class F>
struct TorsionGroupT {
    long N = 1;
    long n = 1;
    std::vector<Point<F>> gens;
    long order() const { return N * n; }
};
using TorsionGroup = TorsionGroupT<FieldElement>;

std::string shape_string(long N, long n);

struct TorsionOptions {
    std::uint64_t prime_ceiling = 10000;  // largest residue field size used
    int min_primes = 3;                   // rational primes required for the bound
    int max_primes = 6;                   // stop once this many have been used
};

// gcd of #E(k_P) over good primes P of K; throws std::runtime_error when
// fewer than min_primes good rational primes exist below the ceiling.
long torsion_bound(const Weierstrass<FieldElement>& E, const NumberField& K, const TorsionOptions& opt = {});

namespace detail {

inline std::vector<std::pair<long, int>> factor_long(long m) {
    std::vector<std::pair<long, int>> out;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

}  // namespace detail

// Torsion subgroup of E(F) given a multiple B of its order. roots(p) must
// return the distinct roots in F of a polynomial over F.
template <class F, class Roots>
TorsionGroupT<F> torsion_from_bound(const Weierstrass<F>& E, long B, Roots roots) {
    TorsionGroupT<F> G;
    Point<F> g1 = Point<F>::infinity(), g2 = Point<F>::infinity();
    for (auto [l, a] : detail::factor_long(B)) {
        // points of exact order l^k for k = 1..a
        std::vector<std::vector<Point<F>>> level(1);
        long count = 1, qk = 1;
        for (int k = 1; k <= a; ++k) {
            qk *= l;
            std::vector<Point<F>> pts;
            for (const F& x : roots(primitive_division_polynomial(E, static_cast<int>(qk)))) {
                // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
                Poly<F> q(std::vector<F>{F(0) - (((x + E.a2) * x + E.a4) * x + E.a6), E.a1 * x + E.a3, x * F(0) + F(1)});
                for (const F& y : roots(q)) pts.emplace_back(x, y);
            }
            if (pts.empty()) break;
            count += static_cast<long>(pts.size());
            level.push_back(std::move(pts));
        }
        const int alpha = static_cast<int>(level.size()) - 1;
        if (alpha == 0) continue;
        int total = 0;
        for (long c = count; c > 1; c /= l) ++total;
        const int beta = total - alpha;
        if (beta < 0 || beta > alpha) throw std::logic_error("inconsistent torsion point count");
        Point<F> P1 = level[alpha].front();
        long la = 1, lb = 1;
        for (int i = 0; i < alpha; ++i) la *= l;
        for (int i = 0; i < beta; ++i) lb *= l;
        G.N *= la;
        G.n *= lb;
        g1 = add(E, g1, P1);
        if (beta == 0) continue;
        // Q of order l^beta with <P1> and <Q> meeting trivially
        std::vector<Point<F>> cyc;
        Point<F> R = P1;
        for (long i = 1; i < la; ++i, R = add(E, R, P1)) cyc.push_back(R);
        bool found = false;
        for (const Point<F>& Q : level[beta]) {
            Point<F> S = scalar_mul(E, lb / l, Q);
            bool inside = false;
            for (const Point<F>& C : cyc)
                if (C == S) inside = true;
            if (!inside) {
                g2 = add(E, g2, Q);
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no complementary torsion generator");
    }
    if (G.N > 1) G.gens.push_back(g1);
    if (G.n > 1) G.gens.push_back(g2);
    if (point_order(E, g1, G.N) != G.N || (G.n > 1 && point_order(E, g2, G.n) != G.n))
        throw std::logic_error("torsion generator order check failed");
    return G;
}

// E(K)[tors]; the curve's coefficients may be rationals or elements of K.
TorsionGroup torsion_subgroup(const Weierstrass<FieldElement>& E, const NumberField& K, const TorsionOptions& opt = {});

// Group structure of E(F_q) from the point count and division polynomial
// roots found by exhaustive evaluation.
TorsionGroupT<Fq> finite_group(const Weierstrass<Fq>& E);

}  // namespace cmt
