#include <gtest/gtest.h>

#include <chrono>

#include "cmtorsion/arith/factor.hpp"
#include "cmtorsion/kubert/kubert.hpp"
#include "cmtorsion/sieve/sieve.hpp"
#include "test_support.hpp"

using namespace cmt;

namespace {

UniPoly U(const std::string& s) { return parse_unipoly(s); }

JField zeta3() { return make_jfield(make_order(-3)); }
JField zeta4() { return make_jfield(make_order(-4)); }

UniPoly resultant_Q(const JField& J, int N) { return to_unipoly(kubert_resultant(J, N)); }

// The eliminant in c used for j0: the base quartic at j0 = 0.
ZBiPoly eliminant(const Rational& j0) {
    if (j0 == 0) return base_quartic();
    return ZBiPoly(BigInt(j0.get_den())) * j_numerator() - ZBiPoly(BigInt(j0.get_num())) * j_denominator();
}

Poly<Rational> in_c_at(const ZBiPoly& p, long b0) {
    return specialize_b(to_rational(p), Rational(b0));
}

long mod(const Rational& a, long p) {
    BigInt n = a.get_num() % p, d = a.get_den() % p;
    long nn = n.get_si(), dd = d.get_si();
    nn = ((nn % p) + p) % p;
    dd = ((dd % p) + p) % p;
    long inv = 1;
    for (long e = p - 2, b = dd; e; e >>= 1, b = b * b % p)
        if (e & 1) inv = inv * b % p;
    return nn * inv % p;
}

long eval_mod(const ZBiPoly& f, long b0, long c0, long p) {
    long r = 0;
    for (auto& [k, v] : f.terms()) {
        long t = mod(Rational(v), p);
        for (unsigned i = 0; i < ZBiPoly::bexp(k); ++i) t = t * b0 % p;
        for (unsigned i = 0; i < ZBiPoly::cexp(k); ++i) t = t * c0 % p;
        r = (r + t) % p;
    }
    return r;
}

}  // namespace

TEST(GroupShape, StringRoundTripAndOrdering) {
    for (GroupShape g : {GroupShape{1, 1}, GroupShape{7, 1}, GroupShape{6, 2}, GroupShape{3, 3}}) {
        EXPECT_EQ(parse_shape(to_string(g)), g);
    }
    EXPECT_EQ(to_string(GroupShape{4, 2}), "Z/2 x Z/4");
    EXPECT_EQ(parse_shape("Z/2 x Z/6"), (GroupShape{6, 2}));
    EXPECT_THROW(parse_shape("Z/4 x Z/6"), std::invalid_argument);
    EXPECT_THROW(parse_shape("Z/"), std::invalid_argument);
    EXPECT_LT((GroupShape{12, 1}), (GroupShape{2, 2}));
}

TEST(Sieve, PossibleExponentsZeta3) {
    std::vector<long> expect{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 15, 16, 18, 20, 21, 24, 26, 28, 30, 36, 42};
    EXPECT_EQ(possible_exponents(make_order(-3), 2), expect);
    // 10 survives over Q(i): (-4/5) = 1
    auto L = possible_exponents(make_order(-4), 1);
    EXPECT_NE(std::find(L.begin(), L.end(), 10), L.end());
    for (long D : {-7L, -8L, -11L, -19L, -43L}) {
        for (long N : possible_exponents(make_order(D), 1)) {
            EXPECT_TRUE(N == 1 || N == 2 || N == 3 || N == 4 || N == 6) << D << " " << N;
        }
    }
}

TEST(Sieve, PossibleExponentsMatchDefinition) {
    // oracle: brute force over N with an independent totient
    auto phi = [](long n) {
        long c = 0;
        for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
        return c;
    };
    for (long D : {-3L, -4L, -7L, -15L, -20L, -23L}) {
        QuadOrder O = make_order(D);
        for (int deg : {1, 2, 3}) {
            std::vector<long> expect;
            for (long N = 1; N <= 400; ++N) {
                if (phi(N) > O.w * deg) continue;
                bool ok = true;
                for (long p = 3; p <= N; p += 2) {
                    bool prime = true;
                    for (long q = 2; q * q <= p; ++q) prime = prime && p % q;
                    if (prime && N % p == 0 && D % p != 0) ok = ok && prime_allowed(O, p, O.h * deg);
                }
                if (ok) expect.push_back(N);
            }
            EXPECT_EQ(possible_exponents(O, deg), expect) << D << " " << deg;
        }
    }
}

TEST(Sieve, CyclotomicIntersectionDegree) {
    JField J15 = make_jfield(make_order(-15));
    // oracle: x^2 - 5 splits over Q(j)
    auto f = factor_over_K(U("x^2 - 5"), J15.K);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(cyclotomic_intersection_degree(J15, 5), 2);
    EXPECT_EQ(cyclotomic_intersection_degree(J15, 10), 2);
    EXPECT_EQ(cyclotomic_intersection_degree(J15, 13), 1);
    for (long n : {1L, 2L, 4L}) EXPECT_EQ(cyclotomic_intersection_degree(J15, n), 1);
    for (long n = 1; n < 40; ++n) EXPECT_EQ(cyclotomic_intersection_degree(zeta3(), n), 1);
    JField J20 = make_jfield(make_order(-20));
    EXPECT_EQ(cyclotomic_intersection_degree(J20, 7), 1);
    EXPECT_EQ(cyclotomic_intersection_degree(J20, 20), 2);
}

TEST(Sieve, PossibleGroups) {
    JField J3 = zeta3();
    auto groups1 = possible_groups(1, J3, possible_exponents(J3.order, 1));
    std::vector<GroupShape> allowed{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {6, 1}, {2, 2}};
    for (auto& g : groups1) EXPECT_NE(std::find(allowed.begin(), allowed.end(), g), allowed.end()) << to_string(g);

    auto groups2 = possible_groups(2, J3, possible_exponents(J3.order, 2));
    auto has = [](const std::vector<GroupShape>& v, GroupShape g) {
        return std::find(v.begin(), v.end(), g) != v.end();
    };
    EXPECT_TRUE(has(groups2, {3, 3}));
    EXPECT_FALSE(has(groups2, {7, 7}));
    EXPECT_TRUE(has(groups2, {6, 2}));
    // the literal cut phi(Nn) <= 4 drops Z/7 even though it occurs over Q(zeta3)
    EXPECT_FALSE(has(groups2, {7, 1}));
    auto groups2w = possible_groups(2, J3, {7, 9}, {.recompute_extra_unit_quadratic = true});
    EXPECT_TRUE(has(groups2w, {7, 1}));
    EXPECT_TRUE(has(groups2w, {9, 1}));
    EXPECT_FALSE(has(groups2w, {7, 7}));

    EXPECT_THROW(possible_groups(3, make_jfield(make_order(-15)), {1, 2}), std::invalid_argument);

    // every survivor satisfies n | N and phi(n) | d
    for (long D : {-3L, -4L, -7L, -15L, -20L}) {
        JField J = make_jfield(make_order(D));
        for (int deg = 1; deg <= 6; ++deg) {
            const int d = deg * J.h();
            for (auto& g : possible_groups(d, J, possible_exponents(J.order, deg))) {
                EXPECT_EQ(g.N % g.n, 0);
                EXPECT_EQ(d % euler_phi(g.n), 0) << D << " " << d << " " << to_string(g);
            }
        }
    }
}

TEST(Sieve, ResultantGoldens) {
    EXPECT_EQ(resultant_Q(zeta3(), 7),
              U("(x^2 + x + 1)*(x^6 - 325*x^5 + 5518*x^4 + 3655*x^3 + 718*x^2 + 51*x + 1)"));
    UniPoly r5 = U("(x^2 + 1)*(x^4 - 18*x^3 + 74*x^2 + 18*x + 1)");
    EXPECT_EQ(resultant_Q(zeta4(), 5), r5 * r5);
    EXPECT_FALSE(resultant_Q(zeta3(), 4).is_zero());
    // explicit j0 reaches the same polynomial as the order
    EXPECT_EQ(resultant_Q(make_jfield(Rational(1728)), 5), r5 * r5);
}

TEST(Sieve, ResultantMatchesSylvesterOracle) {
    // R(b0) / Sylvester determinant at b = b0 is a nonzero constant
    for (Rational j0 : {Rational(0), Rational(1728), Rational(-3375), Rational(8000), Rational(3, 7)}) {
        JField J = make_jfield(j0);
        for (int N : {4, 5, 6, 7, 8}) {
            UniPoly R = resultant_Q(J, N);
            ZBiPoly A = eliminant(j0);
            const ZBiPoly& phi = compute_phiN(N);
            Rational ratio;
            int seen = 0;
            for (long b0 = -4; b0 <= 6 && seen < 4; ++b0) {
                Rational det = test::sylvester_resultant(in_c_at(A, b0), in_c_at(phi, b0));
                Rational val = evaluate(R, Rational(b0));
                if (det == 0) {
                    EXPECT_EQ(val, 0);
                    continue;
                }
                if (seen++ == 0) ratio = val / det;
                EXPECT_EQ(val / det, ratio) << j0 << " N=" << N << " b0=" << b0;
            }
            EXPECT_NE(ratio, 0);
        }
    }
}

TEST(Sieve, ResultantVanishesOnCommonSolutionsModP) {
    for (long p : {61L, 73L, 101L}) {
        for (int N : {5, 7, 8, 9}) {
            UniPoly R = resultant_Q(zeta3(), N);
            const ZBiPoly& phi = compute_phiN(N);
            for (long b0 = 0; b0 < p; ++b0) {
                for (long c0 = 0; c0 < p; ++c0) {
                    if (eval_mod(base_quartic(), b0, c0, p) || eval_mod(phi, b0, c0, p)) continue;
                    long r = 0;
                    for (int i = R.degree(); i >= 0; --i) r = (r * b0 + mod(R[i], p)) % p;
                    EXPECT_EQ(r, 0) << "p=" << p << " N=" << N << " b0=" << b0;
                }
            }
        }
    }
}

TEST(Sieve, ResultantOverNumberFieldAgreesWithRationalRoute) {
    NumberField K(U("x^2 + 1"), "Q(i)");
    for (Rational j0 : {Rational(0), Rational(1728), Rational(-32768)}) {
        JField JQ = make_jfield(j0);
        JField JK{QuadOrder{}, K, K.element(j0)};
        if (j0 == 0) continue;  // the K route always eliminates with n_j
        for (int N : {4, 5, 6, 7}) {
            KPoly RK = kubert_resultant(JK, N);
            UniPoly RQ = resultant_Q(JQ, N);
            EXPECT_EQ(to_unipoly(RK), monic(RQ)) << j0 << " " << N;
        }
    }
}

TEST(Sieve, DegreeSequences) {
    EXPECT_EQ(degree_sequence(zeta3(), 7), (std::vector<int>{2, 6}));
    EXPECT_EQ(degree_sequence(zeta3(), 14), (std::vector<int>{6, 18}));
    JField J99 = make_jfield(make_order(-99));
    ASSERT_EQ(J99.h(), 2);
    EXPECT_EQ(degree_sequence(J99, 9), (std::vector<int>{6, 12, 54}));
    // entries sum to h times the degree of the squarefree part
    for (auto [J, N] : {std::pair{zeta3(), 7}, std::pair{zeta4(), 5}, std::pair{J99, 9}}) {
        int sum = 0;
        for (int e : degree_sequence(J, N)) sum += e;
        KPoly R = kubert_resultant(J, N);
        KPoly sqf = R;
        {
            KPoly g = gcd_k(R, derivative(R));
            sqf = divexact(R, g);
        }
        EXPECT_EQ(sum, J.h() * sqf.degree());
    }
}

TEST(Sieve, SievedTorsionZeta3) {
    JField J = zeta3();
    auto t0 = std::chrono::steady_clock::now();
    EXPECT_EQ(sieved_torsion(J, 2), (std::vector<long>{1, 2, 3, 4, 6, 7}));
    double s2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(s2, 24.0);
    EXPECT_EQ(sieved_torsion(J, 6), (std::vector<long>{1, 2, 3, 4, 6, 7, 9, 14, 19}));
    // y^2 = x^3 + k has no rational 4-torsion
    EXPECT_EQ(sieved_torsion(J, 1), (std::vector<long>{1, 2, 3, 6}));
}

TEST(Sieve, SievedIsSubsetOfExponents) {
    for (long D : {-4L, -7L, -8L, -11L}) {
        JField J = make_jfield(make_order(D));
        for (int deg : {1, 2, 3}) {
            auto all = possible_exponents(J.order, deg);
            auto kept = sieved_torsion(J, deg);
            EXPECT_TRUE(std::is_sorted(kept.begin(), kept.end()));
            EXPECT_TRUE(std::adjacent_find(kept.begin(), kept.end()) == kept.end());
            EXPECT_TRUE(std::includes(all.begin(), all.end(), kept.begin(), kept.end()));
        }
    }
}
