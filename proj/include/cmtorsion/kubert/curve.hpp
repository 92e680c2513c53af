#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cmtorsion/arith/poly.hpp"

namespace cmt {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a
// field F. F needs +, -, *, /, ==, construction from int, and is_zero.
template <class F>
struct Weierstrass {
    F a1, a2, a3, a4, a6;

    Weierstrass() : a1(0), a2(0), a3(0), a4(0), a6(0) {}
    Weierstrass(F a1_, F a2_, F a3_, F a4_, F a6_)
        : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {}

    // E(b, c): y^2 + (1 - c)xy - by = x^3 - bx^2.
    static Weierstrass kubert(const F& b, const F& c) { return Weierstrass(F(1) - c, F(0) - b, F(0) - b, F(0), F(0)); }
    // y^2 = x^3 + A x + B.
    static Weierstrass short_form(const F& A, const F& B) { return Weierstrass(F(0), F(0), F(0), A, B); }

    F b2() const { return a1 * a1 + F(4) * a2; }
    F b4() const { return F(2) * a4 + a1 * a3; }
    F b6() const { return a3 * a3 + F(4) * a6; }
    F b8() const { return a1 * a1 * a6 + F(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    F c4() const {
        F B2 = b2();
        return B2 * B2 - F(24) * b4();
    }
    F c6() const {
        F B2 = b2();
        return F(0) - B2 * B2 * B2 + F(36) * B2 * b4() - F(216) * b6();
    }
    F discriminant() const {
        F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return F(0) - B2 * B2 * B8 - F(8) * B4 * B4 * B4 - F(27) * B6 * B6 + F(9) * B2 * B4 * B6;
    }
    bool is_singular() const { return is_zero(discriminant()); }
    F j_invariant() const {
        F D = discriminant();
        if (is_zero(D)) throw std::domain_error("singular curve");
        F C4 = c4();
        return C4 * C4 * C4 / D;
    }

    template <class G, class Map>
    Weierstrass<G> map(Map f) const {
        return Weierstrass<G>(f(a1), f(a2), f(a3), f(a4), f(a6));
    }
};

template <class F>
struct Point {
    bool inf = true;
    F x, y;

    Point() : x(0), y(0) {}
    Point(F x_, F y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {}
    static Point infinity() { return Point(); }

    friend bool operator==(const Point& P, const Point& Q) {
        if (P.inf || Q.inf) return P.inf == Q.inf;
        return P.x == Q.x && P.y == Q.y;
    }
    friend bool operator!=(const Point& P, const Point& Q) { return !(P == Q); }
};

template <class F>
bool on_curve(const Weierstrass<F>& E, const Point<F>& P) {
    if (P.inf) return true;
    const F& x = P.x;
    const F& y = P.y;
    F lhs = y * y + E.a1 * x * y + E.a3 * y;
    F rhs = x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
    return lhs == rhs;
}

template <class F>
Point<F> negate(const Weierstrass<F>& E, const Point<F>& P) {
    if (P.inf) return P;
    return Point<F>(P.x, F(0) - P.y - E.a1 * P.x - E.a3);
}

template <class F>
Point<F> add(const Weierstrass<F>& E, const Point<F>& P, const Point<F>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    F lambda, nu;
    if (P.x == Q.x) {
        F s = P.y + Q.y + E.a1 * Q.x + E.a3;
        if (is_zero(s)) return Point<F>::infinity();
        F den = F(2) * P.y + E.a1 * P.x + E.a3;
        F x2 = P.x * P.x;
        lambda = (F(3) * x2 + F(2) * E.a2 * P.x + E.a4 - E.a1 * P.y) / den;
        nu = (F(0) - x2 * P.x + E.a4 * P.x + F(2) * E.a6 - E.a3 * P.y) / den;
    } else {
        F dx = Q.x - P.x;
        lambda = (Q.y - P.y) / dx;
        nu = (P.y * Q.x - Q.y * P.x) / dx;
    }
    F x3 = lambda * lambda + E.a1 * lambda - E.a2 - P.x - Q.x;
    F y3 = F(0) - (lambda + E.a1) * x3 - nu - E.a3;
    return Point<F>(std::move(x3), std::move(y3));
}

template <class F>
Point<F> scalar_mul(const Weierstrass<F>& E, long k, const Point<F>& P) {
    if (k < 0) return scalar_mul(E, -k, negate(E, P));
    Point<F> R = Point<F>::infinity(), B = P;
    while (k) {
        if (k & 1) R = add(E, R, B);
        k >>= 1;
        if (k) B = add(E, B, B);
    }
    return R;
}

// Order of P if it divides some k <= limit, else 0.
template <class F>
long point_order(const Weierstrass<F>& E, const Point<F>& P, long limit) {
    Point<F> Q = P;
    for (long k = 1; k <= limit; ++k) {
        if (Q.inf) return k;
        Q = add(E, Q, P);
    }
    return 0;
}

// Division values psi_0..psi_n from psi_2, psi_3, psi_4 by the doubling
// recurrences. div2 divides an element by psi_2 (exact in the universal ring).
template <class R, class Div2>
std::vector<R> division_values(const R& psi2, const R& psi3, const R& psi4, int n, Div2 div2) {
    std::vector<R> p(std::max(n, 4) + 1);
    p[0] = R(0);
    p[1] = R(1);
    p[2] = psi2;
    p[3] = psi3;
    p[4] = psi4;
    for (int k = 5; k <= n; ++k) {
        const int m = k / 2;
        if (k & 1) {
            p[k] = p[m + 2] * p[m] * p[m] * p[m] - p[m - 1] * p[m + 1] * p[m + 1] * p[m + 1];
        } else {
            p[k] = div2(p[m] * (p[m + 2] * p[m - 1] * p[m - 1] - p[m - 2] * p[m + 1] * p[m + 1]));
        }
    }
    p.resize(n + 1);
    return p;
}

// Values psi_k(P) at an affine point.
template <class F>
std::vector<F> division_values_at(const Weierstrass<F>& E, const Point<F>& P, int n) {
    const F& x = P.x;
    F b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
    F x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    F psi2 = F(2) * P.y + E.a1 * x + E.a3;
    F psi3 = F(3) * x4 + b2 * x3 + F(3) * b4 * x2 + F(3) * b6 * x + b8;
    F f4 = F(2) * x4 * x2 + b2 * x4 * x + F(5) * b4 * x4 + F(10) * b6 * x3 + F(10) * b8 * x2 + (b2 * b8 - b4 * b6) * x +
           (b4 * b8 - b6 * b6);
    F psi4 = psi2 * f4;
    return division_values(psi2, psi3, psi4, n, [&](const F& a) { return a / psi2; });
}

// x-polynomial whose roots are the x-coordinates of the nonzero n-torsion
// points: psi_n for odd n, and (psi_n / psi_2) * (4x^3 + b2 x^2 + 2 b4 x + b6)
// for even n.
template <class F>
Poly<F> division_polynomial(const Weierstrass<F>& E, int n) {
    using P = Poly<F>;
    if (n < 1) throw std::invalid_argument("division polynomial index must be positive");
    // integer constants carried in the coefficient field of the curve
    const F zero = E.a1 * F(0) + E.a2 * F(0) + E.a3 * F(0) + E.a4 * F(0) + E.a6 * F(0);
    auto k = [&](int v) -> F { return zero + F(v); };
    F b2 = E.b2(), b4 = E.b4(), b6 = E.b6(), b8 = E.b8();
    P T(std::vector<F>{b6, k(2) * b4, b2, k(4)});
    if (n == 1) return P(k(1));
    if (n == 2) return T;
    // F_k with psi_k = F_k (k odd) or psi_2 F_k (k even).
    std::vector<P> f(std::max(n, 4) + 1);
    f[0] = P();
    f[1] = P(k(1));
    f[2] = P(k(1));
    f[3] = P(std::vector<F>{b8, k(3) * b6, k(3) * b4, b2, k(3)});
    f[4] = P(std::vector<F>{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, k(10) * b8, k(10) * b6, k(5) * b4, b2, k(2)});
    P T2 = T * T;
    for (int k = 5; k <= n; ++k) {
        const int m = k / 2;
        if (k & 1) {
            P u = f[m + 2] * f[m] * f[m] * f[m];
            P v = f[m - 1] * f[m + 1] * f[m + 1] * f[m + 1];
            f[k] = (m % 2 == 0) ? T2 * u - v : u - T2 * v;
        } else {
            f[k] = f[m] * (f[m + 2] * f[m - 1] * f[m - 1] - f[m - 2] * f[m + 1] * f[m + 1]);
        }
    }
    return (n & 1) ? f[n] : f[n] * T;
}

inline int moebius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
    }
    return n > 1 ? -r : r;
}

// Polynomial whose roots are the x-coordinates of points of exact order n.
template <class F>
Poly<F> primitive_division_polynomial(const Weierstrass<F>& E, int n) {
    if (n < 2) throw std::invalid_argument("primitive division polynomial needs n >= 2");
    const F one = E.a1 * F(0) + E.a2 * F(0) + E.a3 * F(0) + E.a4 * F(0) + E.a6 * F(0) + F(1);
    Poly<F> num(one), den(one);
    for (int d = 2; d <= n; ++d) {
        if (n % d) continue;
        int mu = moebius(n / d);
        if (mu == 1) num = num * division_polynomial(E, d);
        if (mu == -1) den = den * division_polynomial(E, d);
    }
    Poly<F> q, r;
    divrem(num, den, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact division in primitive division polynomial");
    return q;
}

}  // namespace cmt
