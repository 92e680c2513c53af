#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmtorsion/arith/scalar.hpp"

namespace cmt {

template <class R>
class Poly;
template <class R>
bool is_zero(const Poly<R>& p);

// Dense univariate polynomial, coefficients in ascending degree.
// R must provide +, -, *, default construction as zero, and the free
// functions is_zero(R) and divexact(R, R). Division with remainder also
// needs inverse(R).
template <class R>
class Poly {
public:
    using coeff_type = R;

    Poly() = default;
    Poly(const R& a) {  // NOLINT: implicit constant embedding
        if (!detail::is_zero_(a)) c_.push_back(a);
    }
    explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

    static Poly monomial(const R& a, int k) {
        if (detail::is_zero_(a)) return Poly();
        std::vector<R> v(k + 1);
        v[k] = a;
        Poly p;
        p.c_ = std::move(v);
        return p;
    }
    // x - a
    static Poly linear(const R& a) {
        std::vector<R> v{-a, R(1)};
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    const R& operator[](std::size_t i) const { return c_[i]; }
    R coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return R();
        return c_[i];
    }
    const R& lc() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<R>& coeffs() const { return c_; }

    void set_coeff(int i, const R& a) {
        if (i >= static_cast<int>(c_.size())) {
            if (detail::is_zero_(a)) return;
            c_.resize(i + 1);
        }
        c_[i] = a;
        trim();
    }

    void trim() {
        while (!c_.empty() && detail::is_zero_(c_.back())) c_.pop_back();
    }

    // Direct access for algorithms that maintain the invariant themselves.
    std::vector<R>& raw() { return c_; }

    Poly operator-() const {
        Poly r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::is_zero_(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                r[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const R& s, const Poly& a) {
        if (detail::is_zero_(s)) return Poly();
        Poly r(a);
        for (auto& x : r.c_) x = s * x;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
    return p.is_zero();
}

template <class R>
Poly<R> shift_left(const Poly<R>& p, int k) {
    if (p.is_zero()) return p;
    std::vector<R> v(k);
    v.insert(v.end(), p.coeffs().begin(), p.coeffs().end());
    return Poly<R>(std::move(v));
}

template <class R>
Poly<R> derivative(const Poly<R>& p) {
    if (p.degree() < 1) return Poly<R>();
    std::vector<R> v(p.degree());
    for (int i = 1; i <= p.degree(); ++i) v[i - 1] = R(i) * p[i];
    return Poly<R>(std::move(v));
}

template <class R, class S>
S evaluate(const Poly<R>& p, const S& x) {
    S r = S();
    for (int i = p.degree(); i >= 0; --i) r = r * x + S(p[i]);
    return r;
}

template <class R>
Poly<R> compose(const Poly<R>& p, const Poly<R>& q) {
    Poly<R> r;
    for (int i = p.degree(); i >= 0; --i) r = r * q + Poly<R>(p[i]);
    return r;
}

template <class R>
Poly<R> pow(Poly<R> base, unsigned e) {
    Poly<R> r(R(1));
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

template <class R>
R ring_pow(R base, unsigned e) {
    R r(1);
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

// Division with remainder over a field.
template <class R>
void divrem(const Poly<R>& a, const Poly<R>& b, Poly<R>& q, Poly<R>& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    r = a;
    if (a.degree() < b.degree()) {
        q = Poly<R>();
        return;
    }
    const int db = b.degree();
    std::vector<R> qc(a.degree() - db + 1);
    R inv_lc = inverse(b.lc());
    std::vector<R>& rc = r.raw();
    for (int k = a.degree(); k >= db; --k) {
        if (detail::is_zero_(rc[k])) continue;
        R t = rc[k] * inv_lc;
        qc[k - db] = t;
        for (int i = 0; i <= db; ++i) rc[k - db + i] = rc[k - db + i] - t * b[i];
    }
    r.trim();
    q = Poly<R>(std::move(qc));
}

template <class R>
Poly<R> rem(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> q, r;
    divrem(a, b, q, r);
    return r;
}

template <class R>
Poly<R> quo(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> q, r;
    divrem(a, b, q, r);
    return q;
}

// Exact division over an integral domain; returns false when b does not divide a.
template <class R>
bool try_divexact(const Poly<R>& a, const Poly<R>& b, Poly<R>& q) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) {
        q = Poly<R>();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    const int db = b.degree();
    std::vector<R> rc = a.coeffs();
    std::vector<R> qc(a.degree() - db + 1);
    for (int k = a.degree(); k >= db; --k) {
        if (detail::is_zero_(rc[k])) continue;
        R t;
        if (!try_divexact(rc[k], b.lc(), t)) return false;
        qc[k - db] = t;
        for (int i = 0; i <= db; ++i) rc[k - db + i] = rc[k - db + i] - t * b[i];
    }
    for (int i = 0; i < db; ++i)
        if (!detail::is_zero_(rc[i])) return false;
    q = Poly<R>(std::move(qc));
    return true;
}

template <class R>
Poly<R> divexact(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> q;
    if (!try_divexact(a, b, q)) throw std::logic_error("inexact polynomial division");
    return q;
}

template <class R>
Poly<R> divexact(const Poly<R>& a, const R& s) {
    std::vector<R> v = a.coeffs();
    for (auto& x : v) x = divexact(x, s);
    return Poly<R>(std::move(v));
}

// lc(b)^(deg a - deg b + 1) * a mod b, over an integral domain.
template <class R>
Poly<R> pseudo_rem(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw std::domain_error("pseudo remainder by zero");
    if (a.degree() < b.degree()) return a;
    const int db = b.degree();
    std::vector<R> rc = a.coeffs();
    const R& l = b.lc();
    for (int k = a.degree(); k >= db; --k) {
        R t = rc[k];
        for (int i = 0; i < k; ++i) rc[i] = rc[i] * l;
        rc[k] = R();
        if (detail::is_zero_(t)) continue;
        for (int i = 0; i < db; ++i) rc[k - db + i] = rc[k - db + i] - t * b[i];
    }
    return Poly<R>(std::move(rc));
}

// Monic gcd over a field (Euclid).
template <class R>
Poly<R> gcd_field(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        Poly<R> r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = inverse(b.lc()) * b;
    }
    if (a.is_zero()) return a;
    return inverse(a.lc()) * a;
}

template <class R>
Poly<R> make_monic(const Poly<R>& a) {
    if (a.is_zero()) return a;
    return inverse(a.lc()) * a;
}

// Extended Euclid over a field: returns g = gcd (monic), with s*a + t*b = g.
template <class R>
Poly<R> xgcd_field(const Poly<R>& a, const Poly<R>& b, Poly<R>& s, Poly<R>& t) {
    Poly<R> r0 = a, r1 = b, s0(R(1)), s1, t0, t1(R(1));
    while (!r1.is_zero()) {
        Poly<R> q, r;
        divrem(r0, r1, q, r);
        Poly<R> s2 = s0 - q * s1;
        Poly<R> t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = Poly<R>();
        t = Poly<R>();
        return r0;
    }
    R inv = inverse(r0.lc());
    s = inv * s0;
    t = inv * t0;
    return inv * r0;
}

// Resultant by the subresultant PRS; valid over any integral domain with exact division.
template <class R>
R resultant(Poly<R> A, Poly<R> B) {
    if (A.is_zero() || B.is_zero()) return R();
    if (A.degree() == 0 && B.degree() == 0) return R(1);
    R s(1);
    if (A.degree() < B.degree()) {
        std::swap(A, B);
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    }
    if (B.degree() == 0) return s * ring_pow(B.lc(), static_cast<unsigned>(A.degree()));
    R g(1), h(1);
    for (;;) {
        const int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        Poly<R> Rm = pseudo_rem(A, B);
        A = std::move(B);
        if (Rm.is_zero()) return R();
        R den = g * ring_pow(h, static_cast<unsigned>(delta));
        B = divexact(Rm, den);
        g = A.lc();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = divexact(ring_pow(g, static_cast<unsigned>(delta)),
                         ring_pow(h, static_cast<unsigned>(delta - 1)));
        }
        if (B.degree() == 0) break;
    }
    const int da = A.degree();
    R num = ring_pow(B.lc(), static_cast<unsigned>(da));
    R res = (da >= 1) ? divexact(num, ring_pow(h, static_cast<unsigned>(da - 1))) : num;
    return s * res;
}

}  // namespace cmt
