#include "cmtorsion/engine/ruled_out.hpp"

#include <functional>
#include <memory>

#include "cmtorsion/kubert/kubert.hpp"

namespace cmt {

namespace {

bool same_shape(const TorsionGroup& T, const GroupShape& G) { return T.N == G.N && T.n == G.n; }

template <class Embed>
Weierstrass<FieldElement> map_curve(const Weierstrass<FieldElement>& E, Embed embed) {
    return E.map<FieldElement>(embed);
}

// Root of an irreducible polynomial over F, as an element of the field it
// generates; linear factors stay in F.
struct Adjoined {
    NumberField field;
    FieldElement root;
    std::function<FieldElement(const FieldElement&)> embed;
};

Adjoined adjoin_root(const NumberField& F, const KPoly& p) {
    Adjoined a;
    if (p.degree() == 1) {
        a.field = F;
        a.root = -(p[0] / p[1]);
        a.embed = [F](const FieldElement& x) { return x.has_field() ? x : F.element(x.to_rational()); };
        return a;
    }
    auto ext = std::make_shared<Extension>(extend_by(F, p));
    a.field = ext->field;
    a.root = ext->root;
    a.embed = [ext](const FieldElement& x) { return ext->embed(x); };
    return a;
}

std::string context(const GroupShape& G, const JField& J, const KPoly& f) {
    return to_string(G) + " for " + J.key() + ", factor of degree " + std::to_string(f.degree());
}

RuledOutResult kubert_route(const GroupShape& G, int d, const JField& J, const RuledOutOptions& opt) {
    RuledOutResult res;
    const int h = J.h();
    const int N = static_cast<int>(G.N);
    for (const auto& fe : kubert_factors(J, N)) {
        const KPoly& f = fe.first;
        // step 2
        if (d % (f.degree() * h)) continue;
        ResultantField R = resultant_field(J, f);
        const int dF = R.F.degree();
        FieldElement c;
        try {
            c = recover_c(J, N, R);
        } catch (const CRecoveryError& e) {
            // step 3
            if (opt.strict) throw;
            res.warnings.push_back("skipped " + context(G, J, f) + ": " + e.what());
            continue;
        } catch (const std::domain_error&) {
            continue;  // a cusp of the j-curve, not an elliptic curve
        }
        // step 4
        if (d % compositum_degree(R.F, static_cast<unsigned>(G.n))) continue;
        Weierstrass<FieldElement> E = Weierstrass<FieldElement>::kubert(R.b, c);
        TorsionGroup T = torsion_subgroup(E, R.F, opt.torsion);
        if (same_shape(T, G)) {
            res.ruled_out = false;
            res.witness = make_kubert_witness(G, J.order.D, R.F, R.b, c);
            return res;
        }
        // steps 5 and 6
        if (dF == d) continue;
        if (T.N != G.N || G.n % T.n) continue;
        const int room = d / dF;
        // step 7 only uses x-coordinate factors of degree dividing room
        for (const KPoly& p : small_factors_over_K(primitive_division_polynomial(E, static_cast<int>(G.n)), R.F, room)) {
            if (room % p.degree()) continue;
            Adjoined Lx = adjoin_root(R.F, p);
            Weierstrass<FieldElement> EL = map_curve(E, Lx.embed);
            const FieldElement& x = Lx.root;
            KPoly g(std::vector<FieldElement>{-(((x + EL.a2) * x + EL.a4) * x + EL.a6), EL.a1 * x + EL.a3,
                                              Lx.field.one()});
            int ng = 0;
            for (const auto& ge : factor_over_K(g, Lx.field)) ng += ge.second;
            const int e = p.degree() * 2 / ng;
            // step 8
            if (e == 1 || room % e) continue;
            Adjoined My = ng == 2 ? Adjoined{Lx.field, FieldElement(), Lx.embed} : adjoin_root(Lx.field, g);
            auto to_M = [&](const FieldElement& a) {
                FieldElement v = Lx.embed(a);
                return ng == 2 ? v : My.embed(v);
            };
            Weierstrass<FieldElement> EM = map_curve(E, to_M);
            TorsionGroup TM = torsion_subgroup(EM, My.field, opt.torsion);
            // step 9
            if (same_shape(TM, G)) {
                res.ruled_out = false;
                res.witness = make_kubert_witness(G, J.order.D, My.field, to_M(R.b), to_M(c));
                return res;
            }
        }
    }
    return res;
}

RuledOutResult hesse_route(const GroupShape& G, int d, const JField& J, const RuledOutOptions& opt) {
    RuledOutResult res;
    const int h = J.h();
    for (const auto& fe : factor_over_K(hesse_j_polynomial(J), J.K)) {
        const KPoly& f = fe.first;
        if (d % (f.degree() * h)) continue;
        ResultantField R = resultant_field(J, f);
        // full 3-torsion needs zeta_3
        KPoly cyclo(std::vector<FieldElement>{R.F.one(), R.F.one(), R.F.one()});
        NumberField F = R.F;
        FieldElement mu = R.b;
        if (roots_in_K(cyclo, R.F).empty()) {
            Adjoined Z = adjoin_root(R.F, cyclo);
            F = Z.field;
            mu = Z.embed(R.b);
        }
        if (d % F.degree()) continue;
        Weierstrass<FieldElement> E = hesse_curve(mu);
        if (E.is_singular()) continue;
        TorsionGroup T = torsion_subgroup(E, F, opt.torsion);
        if (same_shape(T, G)) {
            res.ruled_out = false;
            res.witness = make_witness(G, J.order.D, F, E, "hesse");
            return res;
        }
    }
    return res;
}

}  // namespace

ResultantField resultant_field(const JField& J, const KPoly& factor) {
    ResultantField R;
    if (J.K.is_rational()) {
        const Rational j0 = J.j.to_rational();
        if (factor.degree() == 1) {
            R.F = NumberField::rationals();
            R.b = R.F.element(Rational(-(factor[0] / factor[1]).to_rational()));
        } else {
            R.F = NumberField(monic(to_unipoly(factor)), "", false);
            R.b = R.F.gen();
        }
        R.j = R.F.element(j0);
        return R;
    }
    Adjoined a = adjoin_root(J.K, factor);
    R.F = a.field;
    R.b = a.root;
    R.j = a.embed(J.j);
    return R;
}

FieldElement recover_c(const JField& J, int N, const ResultantField& R) {
    const BiPoly phi = to_rational(compute_phiN(N));
    Poly<FieldElement> A;
    if (J.K.is_rational() && J.j.to_rational() == 0) {
        A = specialize_b(to_rational(base_quartic()), R.b);
    } else {
        A = specialize_b(to_rational(j_numerator()), R.b) - Poly<FieldElement>(R.j) * specialize_b(to_rational(j_denominator()), R.b);
    }
    Poly<FieldElement> P = specialize_b(phi, R.b);
    KPoly g = gcd_k(A, P);
    if (g.degree() != 1)
        throw CRecoveryError("gcd in c has degree " + std::to_string(g.degree()) + " over a field of degree " +
                             std::to_string(R.F.degree()));
    FieldElement c = -(g[0] / g[1]);
    if (!c.has_field()) c = R.F.element(c.to_rational());
    Weierstrass<FieldElement> E = Weierstrass<FieldElement>::kubert(R.b, c);
    if (E.is_singular()) throw std::domain_error("E(b, c) is singular");
    Point<FieldElement> O(R.F.zero(), R.F.zero());
    if (point_order(E, O, N) != N) throw std::logic_error("(0,0) does not have exact order " + std::to_string(N));
    return c;
}

RuledOutResult ruled_out(const GroupShape& G, int d, const JField& J, const RuledOutOptions& opt) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    if (G.N % G.n) throw std::invalid_argument("n must divide N");
    if (G.N >= 4) return kubert_route(G, d, J, opt);
    if (G.N == 3 && G.n == 3) return hesse_route(G, d, J, opt);
    throw std::invalid_argument(to_string(G) + " occurs over Q and is not searched for");
}

Weierstrass<FieldElement> hesse_curve(const FieldElement& mu) {
    const FieldElement m3 = mu * mu * mu;
    const FieldElement A = FieldElement(-27) * mu * (m3 + FieldElement(8));
    const FieldElement B = FieldElement(54) * (m3 * m3 - FieldElement(20) * m3 - FieldElement(8));
    return Weierstrass<FieldElement>::short_form(A, B);
}

KPoly hesse_j_polynomial(const JField& J) {
    const NumberField& K = J.K;
    KPoly mu(std::vector<FieldElement>{K.zero(), K.one()});
    KPoly m3 = mu * mu * mu;
    KPoly one(K.one());
    KPoly a = m3 + KPoly(K.element(Rational(8)));
    KPoly b = m3 - one;
    return KPoly(K.element(Rational(27))) * m3 * a * a * a - KPoly(J.j) * b * b * b;
}

}  // namespace cmt
