#include "cmtorsion/numberfield/numberfield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cmtorsion/arith/factor.hpp"

namespace cmt {

namespace {

// Remainder modulo a monic polynomial.
UniPoly reduce_mod(const UniPoly& v, const UniPoly& f) {
    const int n = f.degree();
    if (v.degree() < n) return v;
    std::vector<Rational> c = v.coeffs();
    for (int k = v.degree(); k >= n; --k) {
        if (is_zero(c[k])) continue;
        const Rational t = c[k];
        for (int i = 0; i < n; ++i)
            if (!is_zero(f[i])) c[k - n + i] -= t * f[i];
        c[k] = 0;
    }
    return UniPoly(std::move(c));
}

}  // namespace

NumberField::NumberField() {
    auto d = std::make_shared<Data>();
    d->poly = UniPoly::linear(Rational(0));
    d->degree = 1;
    d->label = "Q";
    d_ = std::move(d);
}

NumberField::NumberField(const UniPoly& f, std::string label, bool verify) {
    if (f.degree() < 1) throw std::invalid_argument("defining polynomial must have positive degree");
    UniPoly m = make_monic(f);
    if (verify && m.degree() > 1) {
        auto fac = factor_over_Q(m);
        if (fac.size() != 1 || fac[0].second != 1)
            throw std::invalid_argument("defining polynomial is reducible: " + to_string(m));
    }
    auto d = std::make_shared<Data>();
    d->poly = std::move(m);
    d->degree = d->poly.degree();
    d->label = std::move(label);
    d_ = std::move(d);
}

FieldElement NumberField::gen() const { return element(UniPoly::monomial(Rational(1), 1)); }
FieldElement NumberField::zero() const { return FieldElement(d_, UniPoly()); }
FieldElement NumberField::one() const { return element(Rational(1)); }
FieldElement NumberField::element(const Rational& a) const { return FieldElement(d_, UniPoly(a)); }
FieldElement NumberField::element(const UniPoly& p) const { return FieldElement(d_, p); }
FieldElement NumberField::element(const std::vector<Rational>& coords) const {
    return FieldElement(d_, UniPoly(coords));
}

FieldElement::FieldElement(std::shared_ptr<const NumberField::Data> K, UniPoly v)
    : K_(std::move(K)), v_(std::move(v)) {
    if (K_) v_ = reduce_mod(v_, K_->poly);
}

NumberField FieldElement::field() const {
    if (!K_) return NumberField();
    return NumberField(K_);
}

std::vector<Rational> FieldElement::coords() const {
    std::vector<Rational> c = v_.coeffs();
    c.resize(K_ ? K_->degree : std::max<std::size_t>(1, c.size()));
    return c;
}

Rational FieldElement::to_rational() const {
    if (!is_rational()) throw std::domain_error("field element is not rational");
    return v_.coeff(0);
}

std::shared_ptr<const NumberField::Data> FieldElement::common(const FieldElement& a, const FieldElement& b) {
    if (!a.K_) return b.K_;
    if (!b.K_ || a.K_ == b.K_) return a.K_;
    if (a.K_->poly != b.K_->poly) throw std::logic_error("field elements from different fields");
    return a.K_;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    return FieldElement(FieldElement::Reduced{}, FieldElement::common(a, b), a.v_ + b.v_);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    return FieldElement(FieldElement::Reduced{}, FieldElement::common(a, b), a.v_ - b.v_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    auto K = FieldElement::common(a, b);
    if (a.v_.degree() <= 0 || b.v_.degree() <= 0) {
        if (a.v_.degree() <= 0) return FieldElement(FieldElement::Reduced{}, K, a.v_.coeff(0) * b.v_);
        return FieldElement(FieldElement::Reduced{}, K, b.v_.coeff(0) * a.v_);
    }
    return FieldElement(K, a.v_ * b.v_);
}

FieldElement inverse(const FieldElement& a) {
    if (a.is_zero()) throw std::domain_error("inversion of zero");
    if (a.is_rational()) return FieldElement(a.field_data(), UniPoly(inverse(a.to_rational())));
    UniPoly s, t;
    UniPoly g = xgcd_field(a.poly(), a.field_data()->poly, s, t);
    if (g.degree() != 0) throw std::logic_error("element not invertible; defining polynomial reducible");
    return FieldElement(a.field_data(), s);
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    if (b.is_zero()) throw std::domain_error("inversion of zero");
    if (b.is_rational()) {
        auto K = FieldElement::common(a, b);
        return FieldElement(FieldElement::Reduced{}, K, inverse(b.to_rational()) * a.v_);
    }
    return a * inverse(b);
}

std::string to_string(const FieldElement& a, const std::string& var) { return to_string(a.poly(), var); }

Rational norm(const FieldElement& a) {
    if (!a.has_field()) return a.to_rational();
    const UniPoly& m = a.field_data()->poly;
    if (a.is_rational()) {
        Rational r = 1;
        for (int i = 0; i < m.degree(); ++i) r *= a.to_rational();
        return r;
    }
    return resultant(m, a.poly());
}

KPoly to_kpoly(const UniPoly& p, const NumberField& K) {
    std::vector<FieldElement> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = K.element(p[i]);
    return KPoly(std::move(v));
}

UniPoly to_unipoly(const KPoly& p) {
    std::vector<Rational> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].to_rational();
    return UniPoly(std::move(v));
}

KPoly make_monic_k(const KPoly& p) { return make_monic(p); }

namespace {

bool has_rational_coeffs(const KPoly& f) {
    for (const FieldElement& c : f.coeffs())
        if (!c.is_rational()) return false;
    return true;
}

NumberField field_of(const KPoly& a, const KPoly& b) {
    for (const KPoly* p : {&a, &b})
        for (const FieldElement& c : p->coeffs())
            if (c.has_field()) return c.field();
    return NumberField::rationals();
}

}  // namespace

KPoly gcd_k(const KPoly& a, const KPoly& b) {
    // Euclid over K lets rational coefficients grow; Q has a modular gcd
    if (has_rational_coeffs(a) && has_rational_coeffs(b)) {
        UniPoly g = gcd_Q(to_unipoly(a), to_unipoly(b));
        if (g.is_zero()) return KPoly();
        return to_kpoly(monic(g), field_of(a, b));
    }
    return gcd_field(a, b);
}

std::string to_string(const KPoly& p, const std::string& var, const std::string& gen) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        if (p[i].is_zero()) continue;
        std::string c;
        bool neg = false;
        if (p[i].is_rational()) {
            Rational r = p[i].to_rational();
            neg = sgn(r) < 0;
            if (neg) r = -r;
            c = (r == 1 && i > 0) ? "" : to_string(r);
        } else {
            c = "(" + to_string(p[i], gen) + ")";
        }
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        os << c;
        if (i > 0) os << (c.empty() ? "" : "*") << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

namespace {

// Bivariate image with b = x and c = the field generator.
BiPoly to_bivariate(const KPoly& p) {
    std::vector<BiPoly::Term> t;
    for (int k = 0; k <= p.degree(); ++k) {
        const UniPoly& v = p[k].poly();
        for (int i = 0; i <= v.degree(); ++i)
            if (!is_zero(v[i])) t.emplace_back(BiPoly::key(k, i), v[i]);
    }
    return BiPoly::from_terms(std::move(t));
}

// p(x - t*gen)
KPoly shift_by_gen(const KPoly& p, const NumberField& K, long t) {
    KPoly lin(std::vector<FieldElement>{K.element(UniPoly::monomial(Rational(-t), 1)), K.one()});
    return compose(p, lin);
}

bool squarefree_Q(const UniPoly& f) { return gcd_Q(f, derivative(f)).degree() == 0; }

KPoly squarefree_part_k(const KPoly& f, const NumberField& K) {
    if (!has_rational_coeffs(f) && squarefree_Q(norm_poly(f, K))) return make_monic(f);
    KPoly g = gcd_k(f, derivative(f));
    if (g.degree() <= 0) return make_monic(f);
    return make_monic(quo(f, g));
}

struct ShiftedNorm {
    long t = 0;
    KPoly shifted;
    UniPoly norm;
};

// First t = 0, 1, 2, ... for which the norm of f(x - t gen) is squarefree.
ShiftedNorm squarefree_norm(const KPoly& f, const NumberField& K) {
    for (long t = 0; t <= 64; ++t) {
        ShiftedNorm s;
        s.t = t;
        s.shifted = shift_by_gen(f, K, t);
        s.norm = norm_poly(s.shifted, K);
        if (squarefree_Q(s.norm)) return s;
    }
    throw std::runtime_error("no squarefree norm found within 64 shifts");
}

bool kpoly_less(const KPoly& a, const KPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return to_string(a) < to_string(b);
}

std::vector<KPoly> trager_squarefree(const KPoly& f, const NumberField& K) {
    if (f.degree() <= 1) return {make_monic(f)};
    ShiftedNorm s = squarefree_norm(f, K);
    auto nf = factor_over_Q(s.norm);
    if (nf.size() == 1) return {make_monic(f)};
    std::vector<KPoly> out;
    KPoly rest = s.shifted;
    KPoly back(std::vector<FieldElement>{K.element(UniPoly::monomial(Rational(s.t), 1)), K.one()});
    for (std::size_t i = 0; i < nf.size(); ++i) {
        KPoly g = (i + 1 == nf.size()) ? make_monic(rest) : gcd_k(rest, to_kpoly(nf[i].first, K));
        rest = quo(rest, g);
        out.push_back(make_monic(compose(g, back)));
    }
    return out;
}

}  // namespace

UniPoly norm_poly(const KPoly& p, const NumberField& K) {
    if (p.is_zero()) return UniPoly();
    if (K.is_rational()) return to_unipoly(p);
    if (p.degree() == 0) return UniPoly(norm(p[0]));
    BiPoly m = from_poly_in_b(K.poly());
    // m(c) has degree 0 in b; swap roles so the generator is c.
    std::vector<BiPoly::Term> mt;
    for (auto& [k, v] : m.terms()) mt.emplace_back(BiPoly::key(0, BiPoly::bexp(k)), v);
    UniPoly r = resultant(BiPoly::from_terms(std::move(mt)), to_bivariate(p), Var::c);
    // scale so that the result is the true norm: leading coefficient N(lc p)
    Rational lc = norm(p.lc());
    return (lc / r.lc()) * r;
}

UniPoly charpoly(const FieldElement& a) {
    NumberField K = a.field();
    KPoly x_minus_a(std::vector<FieldElement>{-a, K.one()});
    return norm_poly(x_minus_a, K);
}

std::vector<std::pair<KPoly, int>> factor_over_K(const KPoly& p, const NumberField& K) {
    if (p.is_zero()) throw std::invalid_argument("factorization of zero polynomial");
    std::vector<std::pair<KPoly, int>> out;
    if (p.degree() <= 0) return out;
    if (K.is_rational()) {
        for (auto& [f, e] : factor_over_Q(to_unipoly(p))) out.emplace_back(to_kpoly(make_monic(f), K), e);
        return out;
    }
    KPoly f = make_monic(p);
    if (squarefree_Q(norm_poly(f, K))) {
        for (auto& h : trager_squarefree(f, K)) out.emplace_back(h, 1);
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return kpoly_less(x.first, y.first); });
        return out;
    }
    // squarefree decomposition over K (characteristic zero, Yun)
    KPoly fd = derivative(f);
    KPoly g = gcd_k(f, fd);
    KPoly c = quo(f, g);
    KPoly d = quo(fd, g) - derivative(c);
    for (int i = 1; c.degree() > 0; ++i) {
        KPoly a = gcd_k(c, d);
        if (a.degree() > 0)
            for (auto& h : trager_squarefree(a, K)) out.emplace_back(h, i);
        c = quo(c, a);
        d = quo(d, a) - derivative(c);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree() || !(x.first == y.first)) return kpoly_less(x.first, y.first);
        return x.second < y.second;
    });
    return out;
}

std::vector<std::pair<KPoly, int>> factor_over_K(const UniPoly& p, const NumberField& K) {
    return factor_over_K(to_kpoly(p, K), K);
}

std::vector<KPoly> small_factors_over_K(const KPoly& p, const NumberField& K, int max_degree) {
    std::vector<KPoly> out;
    if (p.degree() < 1 || max_degree < 1) return out;
    KPoly f = squarefree_part_k(p, K);
    if (K.is_rational()) {
        for (auto& h : small_factors_Z(clear_denominators(to_unipoly(f)), max_degree).factors)
            out.push_back(to_kpoly(monic(to_rational(h)), K));
    } else {
        // a factor of degree k over K has a norm factor of degree k [K:Q]
        ShiftedNorm s = squarefree_norm(f, K);
        KPoly back(std::vector<FieldElement>{K.element(UniPoly::monomial(Rational(s.t), 1)), K.one()});
        for (auto& h : small_factors_Z(clear_denominators(s.norm), max_degree * K.degree()).factors) {
            KPoly g = gcd_k(s.shifted, to_kpoly(to_rational(h), K));
            out.push_back(make_monic(compose(g, back)));
        }
    }
    std::sort(out.begin(), out.end(), kpoly_less);
    return out;
}

std::vector<FieldElement> roots_in_K(const KPoly& p, const NumberField& K) {
    std::vector<FieldElement> out;
    if (p.degree() < 1) return out;
    KPoly f = squarefree_part_k(p, K);
    if (f.degree() == 1) {
        out.push_back(-f[0]);
        return out;
    }
    if (K.is_rational()) {
        ZPoly z = clear_denominators(to_unipoly(f));
        for (auto& h : small_factors_Z(z, 1).factors) {
            Rational r(-h[0], h[1]);
            r.canonicalize();
            out.push_back(K.element(r));
        }
    } else {
        ShiftedNorm s = squarefree_norm(f, K);
        ZPoly z = clear_denominators(s.norm);
        const FieldElement tgen = K.element(UniPoly::monomial(Rational(s.t), 1));
        for (auto& h : small_factors_Z(z, K.degree()).factors) {
            if (h.degree() != K.degree()) continue;
            KPoly g = gcd_k(s.shifted, to_kpoly(to_rational(h), K));
            if (g.degree() == 1) out.push_back(-g[0] - tgen);
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
        return to_string(a) < to_string(b);
    });
    return out;
}

UniPoly cyclotomic_poly(unsigned n) {
    if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
    auto mobius = [](unsigned m) {
        int mu = 1;
        for (unsigned p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) return 0;
            mu = -mu;
        }
        if (m > 1) mu = -mu;
        return mu;
    };
    UniPoly num(Rational(1)), den(Rational(1));
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        int mu = mobius(n / d);
        if (mu == 0) continue;
        UniPoly t = UniPoly::monomial(Rational(1), d) - UniPoly(Rational(1));
        (mu > 0 ? num : den) = (mu > 0 ? num : den) * t;
    }
    return divexact(num, den);
}

int compositum_degree(const NumberField& K, unsigned n) {
    UniPoly phi = cyclotomic_poly(n);
    if (phi.degree() == 1) return K.degree();
    if (K.is_rational()) return phi.degree();
    ShiftedNorm s = squarefree_norm(to_kpoly(phi, K), K);
    auto nf = factor_over_Q(s.norm);
    const int e = nf.front().first.degree();
    for (auto& [h, m] : nf)
        if (h.degree() != e) throw std::logic_error("cyclotomic factors over K of unequal degree");
    if (e % K.degree()) throw std::logic_error("norm factor degree not divisible by [K:Q]");
    return e;
}

bool is_square_in_K(const Rational& delta, const NumberField& K) {
    if (is_zero(delta)) throw std::invalid_argument("is_square_in_K requires delta != 0");
    if (sgn(delta) > 0 && mpz_perfect_square_p(delta.get_num_mpz_t()) && mpz_perfect_square_p(delta.get_den_mpz_t()))
        return true;
    if (K.is_rational()) return false;
    KPoly f(std::vector<FieldElement>{K.element(Rational(-delta)), K.zero(), K.one()});
    return !roots_in_K(f, K).empty();
}

FieldElement Extension::embed(const FieldElement& a) const {
    if (!a.has_field()) return field.element(a.to_rational());
    return evaluate(a.poly(), base_gen);
}

KPoly Extension::embed(const KPoly& p) const {
    std::vector<FieldElement> v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = embed(p[i]);
    return KPoly(std::move(v));
}

Extension extend_by(const NumberField& K, const KPoly& p) {
    if (p.degree() < 1) throw std::invalid_argument("extend_by needs a nonconstant polynomial");
    Extension ext;
    if (K.is_rational()) {
        ext.field = NumberField(to_unipoly(p), "", false);
        ext.base_gen = ext.field.zero();
        ext.root = ext.field.gen();
        return ext;
    }
    KPoly pm = make_monic(p);
    for (long t = 1; t <= 64; ++t) {
        KPoly shifted = shift_by_gen(pm, K, t);
        UniPoly N = norm_poly(shifted, K);
        if (!squarefree_Q(N)) continue;
        NumberField L(N, "", false);
        const FieldElement gamma = L.gen();
        // alpha_L is the common root of m(y) and p(gamma - t y) with alpha -> y.
        KPoly lin(std::vector<FieldElement>{gamma, L.element(Rational(-t))});
        KPoly P;
        KPoly power(L.one());
        for (int k = 0; k <= pm.degree(); ++k) {
            P += to_kpoly(pm[k].poly(), L) * power;
            power = power * lin;
        }
        KPoly g = gcd_k(to_kpoly(K.poly(), L), P);
        if (g.degree() != 1) continue;
        ext.field = L;
        ext.shift = static_cast<int>(t);
        ext.base_gen = -g[0];
        ext.root = gamma - L.element(Rational(t)) * ext.base_gen;
        if (!evaluate(K.poly(), ext.base_gen).is_zero() || !evaluate(ext.embed(pm), ext.root).is_zero())
            throw std::logic_error("primitive element embedding failed verification");
        return ext;
    }
    throw std::runtime_error("primitive element search failed");
}

}  // namespace cmt
