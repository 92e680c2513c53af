#include <gtest/gtest.h>

#include <map>
#include <set>

#include "cmtorsion/arith/factor.hpp"
#include "cmtorsion/kubert/kubert.hpp"
#include "cmtorsion/kubert/torsion.hpp"
#include "test_support.hpp"

using namespace cmt;
using cmt::test::rand_int;

namespace {

using RF = RationalFunction;

BiPoly B(const std::string& s) { return parse_bipoly(s); }
ZBiPoly ZB(const std::string& s) { return to_integer(parse_bipoly(s)); }
UniPoly U(const std::string& s) { return parse_unipoly(s); }

Point<RF> multiple(int k) {
    auto E = Weierstrass<RF>::kubert(RF::b(), RF::c());
    return scalar_mul(E, k, Point<RF>(RF(0), RF(0)));
}

Rational random_rational(long bound) {
    long den = rand_int(1, bound);
    Rational r(rand_int(-bound, bound), den);
    r.canonicalize();
    return r;
}

// Brute-force structure of E(F_q): exponent from element orders.
std::pair<long, long> brute_structure(const Weierstrass<Fq>& E) {
    auto pts = enumerate_points(E);
    const long total = static_cast<long>(pts.size());
    long N = 1;
    for (auto& P : pts) N = std::max(N, point_order(E, P, total));
    return {N, total / N};
}

std::shared_ptr<const FqContext> prime_field(std::uint64_t p) {
    auto ctx = std::make_shared<FqContext>();
    ctx->p = p;
    ctx->h = fp::Vec{0, 1};
    ctx->k = 1;
    ctx->q = p;
    return ctx;
}

Fq el(const std::shared_ptr<const FqContext>& ctx, long a) {
    long m = a % static_cast<long>(ctx->p);
    if (m < 0) m += static_cast<long>(ctx->p);
    return Fq(ctx, fp::Vec{static_cast<std::uint64_t>(m)});
}

}  // namespace

TEST(KubertGroupLaw, SmallMultiplesOfOrigin) {
    RF b = RF::b(), c = RF::c();
    RF A = b - c - c * c;
    EXPECT_EQ(multiple(1), Point<RF>(RF(0), RF(0)));
    EXPECT_EQ(multiple(2), Point<RF>(b, b * c));
    EXPECT_EQ(multiple(3), Point<RF>(c, b - c));
    EXPECT_EQ(multiple(4), Point<RF>(b * (b - c) / (c * c), b * b * (c * c + c - b) / (c * c * c)));
    RF bc = b - c;
    EXPECT_EQ(multiple(5), Point<RF>(b * c * (c * c + c - b) / (bc * bc), b * c * c * (b * b - b * c - c * c * c) / (bc * bc * bc)));
    RF s7 = b * b - b * c - c * c * c;
    EXPECT_EQ(multiple(6), Point<RF>(bc * s7 / (A * A),
                                     c * bc * bc * (RF(2) * b * b - b * c * (c + RF(3)) + c * c) / (A * A * A)));
    // with bc(c - 3) in the y-coordinate the point leaves the curve
    auto E0 = Weierstrass<RF>::kubert(b, c);
    EXPECT_FALSE(on_curve(E0, Point<RF>(bc * s7 / (A * A),
                                        c * bc * bc * (RF(2) * b * b - b * c * (c - RF(3)) + c * c) / (A * A * A))));
    EXPECT_EQ(multiple(7), Point<RF>(A * b * c * (bc * bc + A * b) / (s7 * s7),
                                     (A * b) * (A * b) * (bc * bc * bc + c * c * c * A) / (s7 * s7 * s7)));
    EXPECT_EQ(multiple(7).x.den(), B("b^2 - b*c - c^3") * B("b^2 - b*c - c^3"));
    EXPECT_TRUE(multiple(0).inf);
    auto E = Weierstrass<RF>::kubert(b, c);
    EXPECT_EQ(scalar_mul(E, -3, Point<RF>(RF(0), RF(0))), negate(E, multiple(3)));
}

TEST(KubertGroupLaw, DivisionValuesMatchGroupLaw) {
    // x([m](0,0)) from division values against the chord-tangent law
    for (int m = 2; m <= 9; ++m) {
        RationalFunction x = kubert_multiple_x(m);
        EXPECT_EQ(x, multiple(m).x) << "m = " << m;
    }
}

TEST(KubertGroupLaw, NoSmallTorsionAtOrigin) {
    for (int k = 1; k <= 3; ++k) EXPECT_FALSE(multiple(k).inf);
    int checked = 0;
    while (checked < 50) {
        Rational b0 = random_rational(20), c0 = random_rational(20);
        auto E = Weierstrass<Rational>::kubert(b0, c0);
        if (E.is_singular()) continue;
        ++checked;
        for (int k = 1; k <= 3; ++k) EXPECT_FALSE(scalar_mul(E, k, Point<Rational>(0, 0)).inf);
    }
}

TEST(KubertGroupLaw, AssociativeAndCommutativeOverFp) {
    for (std::uint64_t p : {11ULL, 23ULL, 53ULL}) {
        auto ctx = prime_field(p);
        int curves = 0;
        while (curves < 4) {
            Weierstrass<Fq> E(el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)),
                              el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)));
            if (E.is_singular()) continue;
            ++curves;
            auto pts = enumerate_points(E);
            for (int t = 0; t < 40; ++t) {
                auto& P = pts[rand_int(0, pts.size() - 1)];
                auto& Q = pts[rand_int(0, pts.size() - 1)];
                auto& R = pts[rand_int(0, pts.size() - 1)];
                EXPECT_EQ(add(E, P, Q), add(E, Q, P));
                EXPECT_EQ(add(E, add(E, P, Q), R), add(E, P, add(E, Q, R)));
                EXPECT_TRUE(on_curve(E, add(E, P, Q)));
                EXPECT_TRUE(add(E, P, negate(E, P)).inf);
            }
        }
    }
}

TEST(KubertGroupLaw, AssociativeOverQ) {
    auto E = kubert_curve(Rational(3, 7), Rational(-2, 5));
    Point<Rational> P(0, 0);
    Point<Rational> Q = scalar_mul(E, 2, P), R = scalar_mul(E, 5, P);
    EXPECT_EQ(add(E, add(E, P, Q), R), add(E, P, add(E, Q, R)));
    EXPECT_EQ(add(E, add(E, Q, R), Q), scalar_mul(E, 9, P));
}

TEST(KubertPolynomials, Goldens) {
    EXPECT_EQ(compute_fN(4), ZB("c"));
    EXPECT_EQ(compute_fN(5), ZB("b - c"));
    EXPECT_EQ(compute_fN(6), ZB("b^2 - b*c - b*c^2"));
    EXPECT_EQ(compute_fN(7), ZB("b^2 - b*c - c^3"));
    EXPECT_EQ(compute_phiN(3), ZB("b"));
    EXPECT_EQ(compute_phiN(5), ZB("b - c"));
    EXPECT_EQ(compute_phiN(6), ZB("b - c - c^2"));
    EXPECT_EQ(to_string(compute_phiN(6)), "b - c^2 - c");
}

TEST(KubertPolynomials, DivisibilityAndFactorization) {
    for (int N = 4; N <= 16; ++N) {
        ZBiPoly prod(BigInt(1));
        for (int d = 3; d <= N; ++d) {
            if (N % d) continue;
            ZBiPoly q;
            EXPECT_TRUE(try_divexact(compute_fN(N), compute_phiN(d), q)) << d << " | " << N;
            prod = prod * compute_phiN(d);
        }
        // f_N is the product of the phi_d up to sign and content
        EXPECT_EQ(primitive_normal(prod), compute_fN(N)) << "N = " << N;
    }
}

TEST(KubertPolynomials, DivisionValueFactorization) {
    // psi_N((0,0)) = +- b^e prod_{d | N, d >= 4} phi_d
    for (int N = 4; N <= 24; ++N) {
        ZBiPoly psi = kubert_division_values(N)[N];
        ZBiPoly prod = ZBiPoly::monomial(BigInt(1), kubert_b_valuation(N), 0);
        for (int d = 4; d <= N; ++d)
            if (N % d == 0) prod = prod * compute_phiN(d);
        EXPECT_TRUE(psi == prod || psi == -prod) << "N = " << N;
        EXPECT_EQ(kubert_b_valuation(N), N * N / 3) << "N = " << N;
    }
}

TEST(KubertPolynomials, JInvariantFormula) {
    NumberField Q3(U("x^2 + x + 1")), Q4(U("x^2 + 1"));
    EXPECT_EQ(j_of_bc(Q3.gen(), Q3.element(Rational(-1))), Q3.zero());
    EXPECT_EQ(j_of_bc(Q4.gen(), Q4.gen()), Q4.element(Rational(1728)));
    EXPECT_EQ(j_of_bc(Rational(-1, 8), Rational(0)), Rational(1728));
    EXPECT_THROW(j_of_bc(Rational(0), Rational(0)), std::domain_error);
    EXPECT_THROW(kubert_curve(Rational(0), Rational(5)), std::domain_error);
    int checked = 0;
    while (checked < 100) {
        Rational b0 = random_rational(30), c0 = random_rational(30);
        auto E = Weierstrass<Rational>::kubert(b0, c0);
        if (E.is_singular()) continue;
        ++checked;
        EXPECT_EQ(j_of_bc(b0, c0), E.j_invariant());
        EXPECT_EQ(specialize(to_rational(j_numerator()), b0, c0),
                  j_of_bc(b0, c0) * specialize(to_rational(j_denominator()), b0, c0));
    }
}

// f_N(b0, c0) = 0 exactly when [N](0,0) is the identity, over Q and over
// fields cut out by points of phi_d.
TEST(KubertPolynomials, TorsionCriterionFuzz) {
    int cases = 0, positives = 0;
    while (cases < 200) {
        const int N = static_cast<int>(rand_int(4, 10));
        if (cases % 2 == 0) {
            Rational b0 = random_rational(25), c0 = random_rational(25);
            auto E = Weierstrass<Rational>::kubert(b0, c0);
            if (E.is_singular()) continue;
            ++cases;
            bool vanish = specialize(to_rational(compute_fN(N)), b0, c0) == 0;
            EXPECT_EQ(vanish, scalar_mul(E, N, Point<Rational>(0, 0)).inf);
            continue;
        }
        // a point on phi_d for d in 4..10, tested against N
        const int d = static_cast<int>(rand_int(4, 10));
        Rational c0 = random_rational(9);
        UniPoly g = specialize_c(to_rational(compute_phiN(d)), c0);
        if (g.degree() < 1) continue;
        auto fs = factor_over_Q(g);
        const UniPoly* best = nullptr;
        for (auto& [f, e] : fs)
            if (f.degree() <= 4 && (!best || f.degree() < best->degree())) best = &f;
        if (!best) continue;
        NumberField K(*best, "", false);
        FieldElement b0 = K.gen(), c0K = K.element(c0);
        auto E = Weierstrass<FieldElement>::kubert(b0, c0K);
        if (E.is_singular()) continue;
        ++cases;
        bool vanish = specialize(to_rational(compute_fN(N)), b0, c0K).is_zero();
        bool torsion = scalar_mul(E, N, Point<FieldElement>(K.zero(), K.zero())).inf;
        EXPECT_EQ(vanish, torsion) << "N = " << N << ", d = " << d;
        EXPECT_EQ(torsion, N % d == 0) << "N = " << N << ", d = " << d;
        positives += torsion;
    }
    EXPECT_GT(positives, 5);
}

TEST(DivisionPolynomial, Basics) {
    auto E = Weierstrass<Rational>::short_form(0, 1);
    UniPoly psi2 = division_polynomial(E, 2);
    EXPECT_EQ(evaluate(psi2, Rational(-1)), 0);
    EXPECT_EQ(psi2, U("4*x^3 + 4"));
    EXPECT_EQ(division_polynomial(E, 1), U("1"));
    EXPECT_EQ(primitive_division_polynomial(E, 2).degree(), 3);
    EXPECT_EQ(primitive_division_polynomial(E, 7).degree(), 24);
    EXPECT_EQ(primitive_division_polynomial(E, 7), division_polynomial(E, 7));
    NumberField Q4(U("x^2 + 1"));
    auto F = kubert_curve(Q4.gen(), Q4.gen());
    EXPECT_TRUE(evaluate(primitive_division_polynomial(F, 5), Q4.zero()).is_zero());
}

TEST(DivisionPolynomial, RootsAreExactOrderXCoordinates) {
    // oracle: points of E(F_{p^2}) listed exhaustively
    for (std::uint64_t p : {7ULL, 11ULL, 13ULL}) {
        auto Fp = prime_field(p);
        std::uint64_t r = 2;
        while (fp::powmod(r, (p - 1) / 2, p) == 1) ++r;
        auto Fp2 = std::make_shared<FqContext>();
        Fp2->p = p;
        Fp2->h = fp::Vec{p - r, 0, 1};
        Fp2->k = 2;
        Fp2->q = p * p;
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<long> a(5);
            for (auto& v : a) v = rand_int(0, p - 1);
            Weierstrass<Fq> E(el(Fp, a[0]), el(Fp, a[1]), el(Fp, a[2]), el(Fp, a[3]), el(Fp, a[4]));
            if (E.is_singular()) continue;
            Weierstrass<Fq> E2(el(Fp2, a[0]), el(Fp2, a[1]), el(Fp2, a[2]), el(Fp2, a[3]), el(Fp2, a[4]));
            auto pts = enumerate_points(E2);
            for (int n : {3, 4, 5}) {
                auto prim = primitive_division_polynomial(E, n);
                EXPECT_EQ(prim.degree(), n == 4 ? 6 : (n * n - 1) / 2);
                std::set<std::uint64_t> expect, got;
                for (auto& P : pts) {
                    if (P.inf || point_order(E2, P, n) != n) continue;
                    if (fp::deg(P.x.vec()) <= 0) expect.insert(P.x.vec().empty() ? 0 : P.x.vec()[0]);
                }
                for (std::uint64_t x = 0; x < p; ++x)
                    if (evaluate(prim, el(Fp, static_cast<long>(x))).is_zero()) got.insert(x);
                EXPECT_EQ(got, expect) << "p = " << p << ", n = " << n;
            }
        }
    }
}

TEST(Torsion, RationalCurves) {
    NumberField Q;
    auto t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, 1), Q);
    EXPECT_EQ(t.N, 6);
    EXPECT_EQ(t.n, 1);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(-4, 0), Q);
    EXPECT_EQ(t.N, 2);
    EXPECT_EQ(t.n, 2);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, 2), Q);
    EXPECT_EQ(t.order(), 1);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(4, 0), Q);
    EXPECT_EQ(t.N, 4);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, 16), Q);
    EXPECT_EQ(t.N, 3);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, -1), Q);
    EXPECT_EQ(t.N, 2);
    EXPECT_EQ(shape_string(t.N, t.n), "Z/2");
}

TEST(Torsion, QuadraticWitnesses) {
    NumberField Q3(U("x^2 + x + 1")), Q4(U("x^2 + 1"));
    auto t = torsion_subgroup(kubert_curve(Q4.gen(), Q4.gen()), Q4);
    EXPECT_EQ(t.N, 10);
    EXPECT_EQ(t.n, 1);
    t = torsion_subgroup(kubert_curve(Q3.gen(), Q3.element(Rational(-1))), Q3);
    EXPECT_EQ(t.N, 7);
    EXPECT_EQ(t.n, 1);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(4, 0), Q4);
    EXPECT_EQ(t.N, 4);
    EXPECT_EQ(t.n, 2);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, 1), Q3);
    EXPECT_EQ(t.N, 6);
    EXPECT_EQ(t.n, 2);
    t = torsion_subgroup(Weierstrass<FieldElement>::short_form(0, 16), Q3);
    EXPECT_EQ(t.N, 3);
    EXPECT_EQ(t.n, 3);
    for (auto& g : t.gens) EXPECT_TRUE(on_curve(Weierstrass<FieldElement>::short_form(0, 16), g));
}

TEST(Torsion, CubicWitnesses) {
    NumberField K9(U("x^3 - 99*x^2 - 90*x - 9"));
    FieldElement b = K9.gen();
    FieldElement c = (b * b * (-2) + b * 318 - 75) / 753;
    auto t = torsion_subgroup(kubert_curve(b, c), K9);
    EXPECT_EQ(t.N, 9);
    EXPECT_EQ(t.n, 1);
    NumberField K14(U("x^3 + 5*x^2 + 2/7*x - 1/49"));
    b = K14.gen();
    c = (b * b * 133 + b * 749 + 54) / 167;
    t = torsion_subgroup(kubert_curve(b, c), K14);
    EXPECT_EQ(t.N, 14);
    EXPECT_EQ(t.n, 1);
}

TEST(Torsion, MatchesBruteForceOverFiniteFields) {
    int cases = 0;
    const std::uint64_t primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    while (cases < 50) {
        std::uint64_t p = primes[rand_int(0, 12)];
        auto ctx = prime_field(p);
        Weierstrass<Fq> E(el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)),
                          el(ctx, rand_int(0, p - 1)), el(ctx, rand_int(0, p - 1)));
        if (E.is_singular()) continue;
        ++cases;
        auto G = finite_group(E);
        auto [N, n] = brute_structure(E);
        EXPECT_EQ(G.N, N) << "p = " << p;
        EXPECT_EQ(G.n, n) << "p = " << p;
        EXPECT_EQ(G.order(), static_cast<long>(count_points(E)));
        if (G.N > 1) EXPECT_EQ(point_order(E, G.gens[0], G.N), G.N);
    }
}

TEST(Torsion, OrderDividesResidueCounts) {
    NumberField Q4(U("x^2 + 1"));
    auto E = kubert_curve(Q4.gen(), Q4.gen());
    auto t = torsion_subgroup(E, Q4);
    int used = 0;
    for (std::uint64_t p : {5ULL, 13ULL, 17ULL, 29ULL, 37ULL}) {
        for (auto& P : primes_above(Q4, p, 10000)) {
            auto Ep = reduce_curve(E, P);
            if (!Ep) continue;
            EXPECT_EQ(static_cast<long>(count_points(*Ep)) % t.order(), 0);
            ++used;
        }
    }
    EXPECT_GT(used, 3);
    EXPECT_THROW(torsion_bound(E, Q4, TorsionOptions{6, 3, 6}), std::runtime_error);
}
