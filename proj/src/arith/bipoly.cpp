#include "cmtorsion/arith/bipoly.hpp"

#include <cctype>
#include <sstream>

namespace cmt {

ZBiPoly to_integer(const BiPoly& p) {
    std::vector<ZBiPoly::Term> t;
    t.reserve(p.size());
    for (auto& [k, v] : p.terms()) {
        if (v.get_den() != 1) throw std::domain_error("non-integral coefficient");
        t.emplace_back(k, v.get_num());
    }
    return ZBiPoly::from_terms(std::move(t));
}

BiPoly to_rational(const ZBiPoly& p) {
    std::vector<BiPoly::Term> t;
    t.reserve(p.size());
    for (auto& [k, v] : p.terms()) t.emplace_back(k, Rational(v));
    return BiPoly::from_terms(std::move(t));
}

BigInt content(const ZBiPoly& p) {
    BigInt g = 0;
    for (auto& [k, v] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZBiPoly primitive_normal(const ZBiPoly& p) {
    if (p.is_zero()) return p;
    BigInt g = content(p);
    if (sgn(p.lc()) < 0) g = -g;
    if (g == 1) return p;
    std::vector<ZBiPoly::Term> t;
    t.reserve(p.size());
    for (auto& [k, v] : p.terms()) t.emplace_back(k, divexact(v, g));
    return ZBiPoly::from_terms(std::move(t));
}

ZBiPoly primitive_normal(const BiPoly& p) {
    if (p.is_zero()) return ZBiPoly();
    BigInt den = 1;
    for (auto& [k, v] : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<ZBiPoly::Term> t;
    t.reserve(p.size());
    for (auto& [k, v] : p.terms()) t.emplace_back(k, BigInt(v.get_num() * (den / v.get_den())));
    return primitive_normal(ZBiPoly::from_terms(std::move(t)));
}

namespace {

using RecPoly = Poly<ZPoly>;

ZPoly content_c(const RecPoly& p) {
    ZPoly g;
    for (auto& co : p.coeffs()) {
        if (co.is_zero()) continue;
        g = g.is_zero() ? primitive_part(co) * ZPoly(content(co)) : gcd_Z(g, co);
        if (g.degree() == 0 && g[0] == 1) break;
    }
    return g;
}

RecPoly pp_c(const RecPoly& p) {
    if (p.is_zero()) return p;
    ZPoly g = content_c(p);
    if (g.degree() == 0 && g[0] == 1) return p;
    std::vector<ZPoly> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = divexact(p[i], g);
    return RecPoly(std::move(v));
}

ZBiPoly swap_vars(const ZBiPoly& p) {
    std::vector<ZBiPoly::Term> t;
    t.reserve(p.size());
    for (auto& [k, v] : p.terms()) t.emplace_back(ZBiPoly::key(ZBiPoly::cexp(k), ZBiPoly::bexp(k)), v);
    return ZBiPoly::from_terms(std::move(t));
}

// True when the two primitive (in c) polynomials certainly share no factor
// of positive c-degree, decided by one good integer specialization of b.
bool coprime_by_specialization(const RecPoly& a, const RecPoly& b) {
    for (long b0 = 2; b0 < 60; ++b0) {
        BigInt x(b0);
        if (is_zero(evaluate(a.lc(), x)) || is_zero(evaluate(b.lc(), x))) continue;
        std::vector<BigInt> va(a.size()), vb(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) va[i] = evaluate(a[i], x);
        for (std::size_t i = 0; i < b.size(); ++i) vb[i] = evaluate(b[i], x);
        return gcd_Z(ZPoly(std::move(va)), ZPoly(std::move(vb))).degree() == 0;
    }
    return false;
}

}  // namespace

ZBiPoly bivariate_gcd(const ZBiPoly& a, const ZBiPoly& b) {
    if (a.is_zero()) return primitive_normal(b);
    if (b.is_zero()) return primitive_normal(a);
    RecPoly A = to_poly_in_c(a), B = to_poly_in_c(b);
    ZPoly ca = content_c(A), cb = content_c(B);
    ZPoly cont = primitive_part(gcd_Z(ca, cb));
    A = pp_c(A);
    B = pp_c(B);
    RecPoly g(ZPoly(BigInt(1)));
    if (A.degree() > 0 && B.degree() > 0 && !coprime_by_specialization(A, B)) {
        if (A.degree() < B.degree()) std::swap(A, B);
        while (!B.is_zero()) {
            RecPoly r = pseudo_rem(A, B);
            A = std::move(B);
            B = pp_c(r);
        }
        g = pp_c(A);
    }
    ZBiPoly out = from_poly_in_c(g) * from_poly_in_b(cont);
    return primitive_normal(out);
}

BiPoly poly_gcd(const BiPoly& a, const BiPoly& b) {
    return to_rational(bivariate_gcd(primitive_normal(a), primitive_normal(b)));
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return UniPoly();
    if (a.is_zero()) return to_rational(clear_denominators(b));
    if (b.is_zero()) return to_rational(clear_denominators(a));
    return to_rational(primitive_part(gcd_Z(clear_denominators(a), clear_denominators(b))));
}

UniPoly resultant(const BiPoly& p, const BiPoly& q, Var var) {
    ZBiPoly a = primitive_normal(p), b = primitive_normal(q);
    if (var == Var::b) {
        a = swap_vars(a);
        b = swap_vars(b);
    }
    if (a.deg_c() <= 0 && b.deg_c() <= 0) throw std::invalid_argument("no elimination variable");
    ZPoly r = resultant(to_poly_in_c(a), to_poly_in_c(b));
    return to_rational(primitive_part(r));
}

Rational resultant(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) return Rational(0);
    // Res(s f, t g) = s^deg g t^deg f Res(f, g)
    ZPoly a = clear_denominators(p), b = clear_denominators(q);
    Rational s = p.lc() / Rational(a.lc()), t = q.lc() / Rational(b.lc());
    Rational scale = 1;
    for (int i = 0; i < q.degree(); ++i) scale *= s;
    for (int i = 0; i < p.degree(); ++i) scale *= t;
    return scale * Rational(resultant(a, b));
}

namespace {

template <class C>
std::string coeff_string(const C& a) {
    return to_string(a);
}

template <class C>
std::string bipoly_string(const BiPolyT<C>& p) {
    using P = BiPolyT<C>;
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : p.terms()) {
        unsigned i = P::bexp(k), j = P::cexp(k);
        bool neg = sgn(v) < 0;
        C mag = neg ? C(-v) : v;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        if (mag != 1 || (i == 0 && j == 0)) factors.push_back(coeff_string(mag));
        if (i == 1) factors.emplace_back("b");
        if (i > 1) factors.push_back("b^" + std::to_string(i));
        if (j == 1) factors.emplace_back("c");
        if (j > 1) factors.push_back("c^" + std::to_string(j));
        for (std::size_t f = 0; f < factors.size(); ++f) os << (f ? "*" : "") << factors[f];
    }
    return os.str();
}

template <class C>
std::string unipoly_string(const Poly<C>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        if (is_zero(p[i])) continue;
        bool neg = sgn(p[i]) < 0;
        C mag = neg ? C(-p[i]) : p[i];
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool show = mag != 1 || i == 0;
        if (show) os << to_string(mag);
        if (i > 0) os << (show ? "*" : "") << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

class Parser {
public:
    Parser(const std::string& s, std::vector<std::string> vars) : s_(s), vars_(std::move(vars)) {}

    BiPoly parse() {
        BiPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    BiPoly expr() {
        BiPoly r;
        if (accept('-')) {
            r = -term();
        } else {
            accept('+');
            r = term();
        }
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }
    BiPoly term() {
        BiPoly r = power();
        for (;;) {
            if (accept('*')) {
                r *= power();
            } else if (accept('/')) {
                BiPoly d = power();
                if (d.is_zero() || d.size() != 1 || d.lead_key() != 0) fail("division by a non-constant");
                r = inverse(d.lc()) * r;
            } else {
                return r;
            }
        }
    }
    BiPoly power() {
        BiPoly base = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
        }
        return base;
    }
    BiPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            BiPoly r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (ch == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return BiPoly(Rational(BigInt(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            for (std::size_t v = 0; v < vars_.size(); ++v)
                if (vars_[v] == name) return v == 0 ? BiPoly::b() : BiPoly::c();
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }

    const std::string& s_;
    std::vector<std::string> vars_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const BiPoly& p) { return bipoly_string(p); }
std::string to_string(const ZBiPoly& p) { return bipoly_string(p); }
std::string to_string(const UniPoly& p, const std::string& var) { return unipoly_string(p, var); }
std::string to_string(const ZPoly& p, const std::string& var) { return unipoly_string(p, var); }

BiPoly parse_bipoly(const std::string& s) { return Parser(s, {"b", "c"}).parse(); }

UniPoly parse_unipoly(const std::string& s, const std::string& var) {
    BiPoly p = Parser(s, {var}).parse();
    return specialize_c<Rational, Rational>(p, Rational(0));
}

}  // namespace cmt
