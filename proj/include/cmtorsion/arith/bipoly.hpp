#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmtorsion/arith/poly.hpp"
#include "cmtorsion/arith/zpoly.hpp"

namespace cmt {

template <class C>
class BiPolyT;
template <class C>
bool is_zero(const BiPolyT<C>& p);

// Sparse polynomial in b and c. Terms are kept sorted in decreasing
// lexicographic order with b > c, so the first term is the leading one.
template <class C>
class BiPolyT {
public:
    using Key = std::uint64_t;
    using Term = std::pair<Key, C>;

    static Key key(unsigned i, unsigned j) { return (static_cast<Key>(i) << 32) | j; }
    static unsigned bexp(Key k) { return static_cast<unsigned>(k >> 32); }
    static unsigned cexp(Key k) { return static_cast<unsigned>(k & 0xffffffffu); }

    BiPolyT() = default;
    BiPolyT(const C& a) {  // NOLINT: constant embedding
        if (!detail::is_zero_(a)) t_.emplace_back(key(0, 0), a);
    }
    static BiPolyT monomial(const C& a, unsigned i, unsigned j) {
        BiPolyT p;
        if (!detail::is_zero_(a)) p.t_.emplace_back(key(i, j), a);
        return p;
    }
    static BiPolyT b() { return monomial(C(1), 1, 0); }
    static BiPolyT c() { return monomial(C(1), 0, 1); }
    // Builds from unsorted terms, combining duplicates.
    static BiPolyT from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
        BiPolyT p;
        for (auto& t : terms) {
            if (!p.t_.empty() && p.t_.back().first == t.first) {
                p.t_.back().second += t.second;
            } else {
                if (!p.t_.empty() && detail::is_zero_(p.t_.back().second)) p.t_.pop_back();
                p.t_.push_back(std::move(t));
            }
        }
        if (!p.t_.empty() && detail::is_zero_(p.t_.back().second)) p.t_.pop_back();
        return p;
    }

    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }

    const C& lc() const {
        if (t_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return t_.front().second;
    }
    Key lead_key() const { return t_.front().first; }

    int deg_b() const {
        int d = -1;
        for (auto& t : t_) d = std::max(d, static_cast<int>(bexp(t.first)));
        return d;
    }
    int deg_c() const {
        int d = -1;
        for (auto& t : t_) d = std::max(d, static_cast<int>(cexp(t.first)));
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (auto& t : t_) d = std::max(d, static_cast<int>(bexp(t.first) + cexp(t.first)));
        return d;
    }
    C coeff(unsigned i, unsigned j) const {
        Key k = key(i, j);
        auto it = std::lower_bound(t_.begin(), t_.end(), k,
                                   [](const Term& x, Key kk) { return x.first > kk; });
        if (it != t_.end() && it->first == k) return it->second;
        return C();
    }

    BiPolyT operator-() const {
        BiPolyT r(*this);
        for (auto& t : r.t_) t.second = -t.second;
        return r;
    }

    friend BiPolyT operator+(const BiPolyT& a, const BiPolyT& b) { return merge(a, b, false); }
    friend BiPolyT operator-(const BiPolyT& a, const BiPolyT& b) { return merge(a, b, true); }
    BiPolyT& operator+=(const BiPolyT& o) { return *this = *this + o; }
    BiPolyT& operator-=(const BiPolyT& o) { return *this = *this - o; }
    BiPolyT& operator*=(const BiPolyT& o) { return *this = *this * o; }

    friend BiPolyT operator*(const BiPolyT& a, const BiPolyT& b) {
        if (a.is_zero() || b.is_zero()) return BiPolyT();
        if (a.size() == 1 || b.size() == 1) {
            const BiPolyT& m = a.size() == 1 ? a : b;
            const BiPolyT& o = a.size() == 1 ? b : a;
            BiPolyT r;
            r.t_.reserve(o.size());
            for (auto& t : o.t_) r.t_.emplace_back(t.first + m.t_[0].first, t.second * m.t_[0].second);
            return r;  // multiplying by a monomial keeps the order
        }
        std::unordered_map<Key, C> acc;
        acc.reserve(a.size() * 4 + b.size() * 4);
        for (auto& x : a.t_)
            for (auto& y : b.t_) acc[x.first + y.first] += x.second * y.second;
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& kv : acc)
            if (!detail::is_zero_(kv.second)) terms.emplace_back(kv.first, std::move(kv.second));
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
        BiPolyT r;
        r.t_ = std::move(terms);
        return r;
    }
    friend BiPolyT operator*(const C& s, const BiPolyT& a) {
        if (detail::is_zero_(s)) return BiPolyT();
        BiPolyT r(a);
        for (auto& t : r.t_) t.second = s * t.second;
        return r;
    }
    friend bool operator==(const BiPolyT& a, const BiPolyT& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BiPolyT& a, const BiPolyT& b) { return !(a == b); }

    // Divides by the largest monomial b^i c^j dividing every term; returns (i, j).
    std::pair<unsigned, unsigned> strip_monomial() {
        if (t_.empty()) return {0, 0};
        unsigned mi = ~0u, mj = ~0u;
        for (auto& t : t_) {
            mi = std::min(mi, bexp(t.first));
            mj = std::min(mj, cexp(t.first));
        }
        if (mi || mj)
            for (auto& t : t_) t.first -= key(mi, mj);
        return {mi, mj};
    }

    std::vector<Term>& raw() { return t_; }

private:
    static BiPolyT merge(const BiPolyT& a, const BiPolyT& b, bool negate_b) {
        BiPolyT r;
        r.t_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.t_.size() || j < b.t_.size()) {
            if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first > b.t_[j].first)) {
                r.t_.push_back(a.t_[i++]);
            } else if (i == a.t_.size() || b.t_[j].first > a.t_[i].first) {
                r.t_.emplace_back(b.t_[j].first, negate_b ? C(-b.t_[j].second) : b.t_[j].second);
                ++j;
            } else {
                C s = negate_b ? C(a.t_[i].second - b.t_[j].second) : C(a.t_[i].second + b.t_[j].second);
                if (!detail::is_zero_(s)) r.t_.emplace_back(a.t_[i].first, std::move(s));
                ++i;
                ++j;
            }
        }
        return r;
    }

    std::vector<Term> t_;
};

template <class C>
bool is_zero(const BiPolyT<C>& p) {
    return p.is_zero();
}

using BiPoly = BiPolyT<Rational>;
using ZBiPoly = BiPolyT<BigInt>;

// Exact division in lex order; returns false if b does not divide a.
template <class C>
bool try_divexact(const BiPolyT<C>& a, const BiPolyT<C>& b, BiPolyT<C>& q) {
    using P = BiPolyT<C>;
    using Key = typename P::Key;
    if (b.is_zero()) throw std::domain_error("bivariate division by zero");
    std::map<Key, C, std::greater<Key>> r;
    for (auto& t : a.terms()) r.emplace(t.first, t.second);
    const Key lk = b.lead_key();
    const unsigned li = P::bexp(lk), lj = P::cexp(lk);
    const C& l = b.lc();
    std::vector<typename P::Term> qt;
    while (!r.empty()) {
        auto it = r.begin();
        const Key k = it->first;
        const unsigned ki = P::bexp(k), kj = P::cexp(k);
        if (ki < li || kj < lj) return false;
        C t;
        if (!try_divexact(it->second, l, t)) return false;
        const Key shift = P::key(ki - li, kj - lj);
        for (auto& bt : b.terms()) {
            const Key nk = bt.first + shift;
            C prod = t * bt.second;
            auto f = r.find(nk);
            if (f == r.end()) {
                r.emplace(nk, C(-prod));
            } else {
                f->second -= prod;
                if (is_zero(f->second)) r.erase(f);
            }
        }
        qt.emplace_back(shift, std::move(t));
    }
    q = P::from_terms(std::move(qt));
    return true;
}

template <class C>
BiPolyT<C> divexact(const BiPolyT<C>& a, const BiPolyT<C>& b) {
    BiPolyT<C> q;
    if (!try_divexact(a, b, q)) throw std::logic_error("inexact bivariate division");
    return q;
}

template <class C>
BiPolyT<C> pow(const BiPolyT<C>& a, unsigned e) {
    BiPolyT<C> r(C(1)), base = a;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

// Recursive view: polynomial in c whose coefficients are polynomials in b.
template <class C>
Poly<Poly<C>> to_poly_in_c(const BiPolyT<C>& p) {
    using P = BiPolyT<C>;
    int dc = p.deg_c();
    if (dc < 0) return {};
    std::vector<std::vector<C>> rows(dc + 1);
    for (auto& t : p.terms()) {
        unsigned i = P::bexp(t.first), j = P::cexp(t.first);
        if (rows[j].size() <= i) rows[j].resize(i + 1);
        rows[j][i] = t.second;
    }
    std::vector<Poly<C>> out(dc + 1);
    for (int j = 0; j <= dc; ++j) out[j] = Poly<C>(std::move(rows[j]));
    return Poly<Poly<C>>(std::move(out));
}

template <class C>
BiPolyT<C> from_poly_in_c(const Poly<Poly<C>>& p) {
    std::vector<typename BiPolyT<C>::Term> terms;
    for (int j = 0; j <= p.degree(); ++j)
        for (int i = 0; i <= p[j].degree(); ++i)
            if (!is_zero(p[j][i])) terms.emplace_back(BiPolyT<C>::key(i, j), p[j][i]);
    return BiPolyT<C>::from_terms(std::move(terms));
}

template <class C>
BiPolyT<C> from_poly_in_b(const Poly<C>& p) {
    std::vector<typename BiPolyT<C>::Term> terms;
    for (int i = 0; i <= p.degree(); ++i)
        if (!is_zero(p[i])) terms.emplace_back(BiPolyT<C>::key(i, 0), p[i]);
    return BiPolyT<C>::from_terms(std::move(terms));
}

// Evaluates at (b, c) = (x, y) in any ring S constructible from C.
template <class C, class S>
S specialize(const BiPolyT<C>& p, const S& x, const S& y) {
    using P = BiPolyT<C>;
    std::map<unsigned, S> bp, cp;
    auto power = [](std::map<unsigned, S>& cache, const S& base, unsigned e) -> const S& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        S r = ring_pow(base, e);
        return cache.emplace(e, std::move(r)).first->second;
    };
    S r = S();
    for (auto& t : p.terms()) {
        const S& bi = power(bp, x, P::bexp(t.first));
        const S& cj = power(cp, y, P::cexp(t.first));
        r += S(t.second) * bi * cj;
    }
    return r;
}

// Substitutes b = x, leaving a polynomial in c.
template <class C, class S>
Poly<S> specialize_b(const BiPolyT<C>& p, const S& x) {
    Poly<Poly<C>> rc = to_poly_in_c(p);
    std::vector<S> out(rc.size());
    for (std::size_t j = 0; j < rc.size(); ++j) out[j] = evaluate(rc[j], x);
    return Poly<S>(std::move(out));
}

// Substitutes c = y, leaving a polynomial in b.
template <class C, class S>
Poly<S> specialize_c(const BiPolyT<C>& p, const S& y) {
    using P = BiPolyT<C>;
    int db = p.deg_b();
    if (db < 0) return {};
    std::vector<S> out(db + 1);
    std::map<unsigned, S> cp;
    for (auto& t : p.terms()) {
        unsigned i = P::bexp(t.first), j = P::cexp(t.first);
        auto it = cp.find(j);
        if (it == cp.end()) it = cp.emplace(j, ring_pow(y, j)).first;
        out[i] += S(t.second) * it->second;
    }
    return Poly<S>(std::move(out));
}

ZBiPoly to_integer(const BiPoly& p);          // requires integral coefficients
BiPoly to_rational(const ZBiPoly& p);
// Integer-primitive multiple with positive lex-leading coefficient.
ZBiPoly primitive_normal(const BiPoly& p);
ZBiPoly primitive_normal(const ZBiPoly& p);
BigInt content(const ZBiPoly& p);

// Primitive gcd over Q[b,c] with positive leading coefficient.
ZBiPoly bivariate_gcd(const ZBiPoly& a, const ZBiPoly& b);
BiPoly poly_gcd(const BiPoly& a, const BiPoly& b);
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);  // primitive over Z, positive lc

// Resultant with respect to c (the result is a polynomial in b) or b.
enum class Var { b, c };
// Normalized to an integer-primitive polynomial with positive leading coefficient.
UniPoly resultant(const BiPoly& p, const BiPoly& q, Var var);
// Res_x of univariate polynomials (a rational number).
Rational resultant(const UniPoly& p, const UniPoly& q);

std::string to_string(const BiPoly& p);
std::string to_string(const ZBiPoly& p);
std::string to_string(const UniPoly& p, const std::string& var = "x");
std::string to_string(const ZPoly& p, const std::string& var = "x");
BiPoly parse_bipoly(const std::string& s);
UniPoly parse_unipoly(const std::string& s, const std::string& var = "x");

}  // namespace cmt
