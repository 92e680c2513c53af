#include "cmtorsion/kubert/residue.hpp"

#include <random>
#include <stdexcept>

#include "cmtorsion/arith/bipoly.hpp"

namespace cmt {

Fq::Fq(std::shared_ptr<const FqContext> ctx, fp::Vec v) : ctx_(std::move(ctx)), v_(std::move(v)) {
    for (auto& a : v_) a %= ctx_->p;
    fp::trim(v_);
    if (fp::deg(v_) >= ctx_->k) v_ = fp::rem(v_, ctx_->h, ctx_->p);
}

std::shared_ptr<const FqContext> Fq::common(const Fq& a, const Fq& b) {
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_ && (a.ctx_->p != b.ctx_->p || a.ctx_->h != b.ctx_->h))
        throw std::invalid_argument("finite field elements from different fields");
    return a.ctx_ ? a.ctx_ : b.ctx_;
}

fp::Vec Fq::lift(const std::shared_ptr<const FqContext>& c) const {
    if (ctx_) return v_;
    long m = s_ % static_cast<long>(c->p);
    if (m < 0) m += static_cast<long>(c->p);
    fp::Vec v{static_cast<std::uint64_t>(m)};
    fp::trim(v);
    return v;
}

Fq Fq::from_index(const std::shared_ptr<const FqContext>& ctx, std::uint64_t i) {
    fp::Vec v(ctx->k);
    for (int j = 0; j < ctx->k; ++j) {
        v[j] = i % ctx->p;
        i /= ctx->p;
    }
    fp::trim(v);
    Fq r;
    r.ctx_ = ctx;
    r.v_ = std::move(v);
    return r;
}

std::uint64_t Fq::index() const {
    if (!ctx_) throw std::logic_error("index of a field-less constant");
    std::uint64_t r = 0;
    for (int j = static_cast<int>(v_.size()) - 1; j >= 0; --j) r = r * ctx_->p + v_[j];
    return r;
}

Fq operator+(const Fq& a, const Fq& b) {
    auto c = Fq::common(a, b);
    if (!c) return Fq(a.s_ + b.s_);
    Fq r;
    r.ctx_ = c;
    r.v_ = fp::add(a.lift(c), b.lift(c), c->p);
    return r;
}

Fq operator-(const Fq& a, const Fq& b) {
    auto c = Fq::common(a, b);
    if (!c) return Fq(a.s_ - b.s_);
    Fq r;
    r.ctx_ = c;
    r.v_ = fp::sub(a.lift(c), b.lift(c), c->p);
    return r;
}

Fq operator*(const Fq& a, const Fq& b) {
    auto c = Fq::common(a, b);
    if (!c) return Fq(a.s_ * b.s_);
    Fq r;
    r.ctx_ = c;
    r.v_ = fp::mulmod_poly(a.lift(c), b.lift(c), c->h, c->p);
    return r;
}

Fq inverse(const Fq& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero in a finite field");
    if (!a.ctx()) throw std::logic_error("inverse of a field-less constant");
    fp::Vec s, t;
    fp::Vec g = fp::xgcd(a.vec(), a.ctx()->h, s, t, a.ctx()->p);
    // g is a nonzero constant since h is irreducible
    std::uint64_t gi = fp::invmod(g[0], a.ctx()->p);
    return Fq(a.ctx(), fp::scale(s, gi, a.ctx()->p));
}

Fq operator/(const Fq& a, const Fq& b) {
    auto c = Fq::common(a, b);
    if (!c) throw std::logic_error("division of field-less constants");
    Fq bb = b.ctx() ? b : Fq(c, b.lift(c));
    return a * inverse(bb);
}

bool operator==(const Fq& a, const Fq& b) {
    auto c = Fq::common(a, b);
    if (!c) return a.s_ == b.s_;
    return a.lift(c) == b.lift(c);
}

std::optional<Fq> ResiduePrime::reduce(const FieldElement& a) const {
    const std::uint64_t p = field->p;
    for (int i = 0; i <= a.poly().degree(); ++i)
        if (!fp::reducible_at(a.poly()[i], p)) return std::nullopt;
    fp::Vec v = fp::from_poly(a.poly(), p);
    return Fq(field, fp::rem(v, field->h, p));
}

std::optional<Fq> ResiduePrime::reduce(const Rational& a) const {
    if (!fp::reducible_at(a, field->p)) return std::nullopt;
    return Fq(field, fp::Vec{fp::reduce(a, field->p)});
}

std::vector<ResiduePrime> primes_above(const NumberField& K, std::uint64_t p, std::uint64_t max_norm) {
    std::vector<ResiduePrime> out;
    const UniPoly& f = K.poly();
    for (int i = 0; i <= f.degree(); ++i)
        if (!fp::reducible_at(f[i], p)) return out;
    if (K.degree() > 1) {
        Rational disc = resultant(f, derivative(f));
        if (fp::reduce(disc, p) == 0) return out;
    }
    fp::Vec fb = fp::from_poly(f, p);
    std::mt19937_64 rng(p);
    auto factors = fp::factor_squarefree(fp::monic(fb, p), p, rng);
    std::sort(factors.begin(), factors.end(), [](const fp::Vec& a, const fp::Vec& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (auto& h : factors) {
        const int k = fp::deg(h);
        std::uint64_t q = 1;
        bool small = true;
        for (int i = 0; i < k; ++i) {
            if (q > max_norm / p) {
                small = false;
                break;
            }
            q *= p;
        }
        if (!small || q > max_norm) continue;
        auto ctx = std::make_shared<FqContext>();
        ctx->p = p;
        ctx->h = h;
        ctx->k = k;
        ctx->q = q;
        out.push_back(ResiduePrime{ctx, K});
    }
    return out;
}

namespace {

std::shared_ptr<const FqContext> curve_context(const Weierstrass<Fq>& E) {
    for (const Fq* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (a->ctx()) return a->ctx();
    throw std::invalid_argument("curve has no finite field context");
}

}  // namespace

std::uint64_t count_points(const Weierstrass<Fq>& E) {
    auto ctx = curve_context(E);
    if (ctx->p == 2) throw std::invalid_argument("point counting needs odd characteristic");
    const std::uint64_t q = ctx->q;
    std::vector<char> square(q, 0);
    for (std::uint64_t i = 0; i < q; ++i) {
        Fq y = Fq::from_index(ctx, i);
        Fq s = y * y;
        square[s.is_zero() ? 0 : s.index()] = 1;
    }
    std::uint64_t n = 1;
    Fq b2 = E.a1 * E.a1 + Fq(4) * E.a2, b4 = Fq(2) * E.a4 + E.a1 * E.a3, b6 = E.a3 * E.a3 + Fq(4) * E.a6;
    for (std::uint64_t i = 0; i < q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        Fq d = ((Fq(4) * x + b2) * x + Fq(2) * b4) * x + b6;
        if (d.is_zero()) {
            n += 1;
        } else if (square[d.index()]) {
            n += 2;
        }
    }
    return n;
}

std::vector<Point<Fq>> enumerate_points(const Weierstrass<Fq>& E) {
    auto ctx = curve_context(E);
    const std::uint64_t q = ctx->q;
    std::vector<Point<Fq>> pts{Point<Fq>::infinity()};
    for (std::uint64_t i = 0; i < q; ++i) {
        Fq x = Fq::from_index(ctx, i);
        for (std::uint64_t j = 0; j < q; ++j) {
            Point<Fq> P(x, Fq::from_index(ctx, j));
            if (on_curve(E, P)) pts.push_back(P);
        }
    }
    return pts;
}

std::optional<Weierstrass<Fq>> reduce_curve(const Weierstrass<FieldElement>& E, const ResiduePrime& P) {
    std::vector<Fq> a;
    for (const FieldElement* c : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6}) {
        auto r = P.reduce(*c);
        if (!r) return std::nullopt;
        a.push_back(*r);
    }
    Weierstrass<Fq> Ef(a[0], a[1], a[2], a[3], a[4]);
    if (Ef.discriminant().is_zero()) return std::nullopt;
    return Ef;
}

}  // namespace cmt
