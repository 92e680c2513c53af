#include <gtest/gtest.h>

#include <set>

#include "cmtorsion/arith/bipoly.hpp"
#include "cmtorsion/arith/factor.hpp"
#include "cmtorsion/arith/fp.hpp"
#include "cmtorsion/arith/ratfunc.hpp"
#include "test_support.hpp"

using namespace cmt;
using cmt::test::rand_int;

namespace {

UniPoly U(const std::string& s) { return parse_unipoly(s); }
BiPoly B(const std::string& s) { return parse_bipoly(s); }

UniPoly product(const std::vector<std::pair<UniPoly, int>>& fs) {
    UniPoly r(Rational(1));
    for (auto& [f, e] : fs) r = r * pow(f, e);
    return r;
}

bool same_up_to_unit(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return make_monic(a) == make_monic(b);
}

}  // namespace

TEST(Scalar, SymmetricModAndGcd) {
    EXPECT_EQ(symmetric_mod(BigInt(7), BigInt(5)), 2);
    EXPECT_EQ(symmetric_mod(BigInt(8), BigInt(5)), -2);
    EXPECT_EQ(gcd(BigInt(12), BigInt(18)), 6);
    Rational r(6, 4);
    r.canonicalize();
    EXPECT_EQ(r.get_num(), 3);
    EXPECT_EQ(r.get_den(), 2);
}

TEST(UniPoly, RingLawsRandom) {
    for (int t = 0; t < 50; ++t) {
        ZPoly p = test::random_zpoly(rand_int(0, 6), 9);
        ZPoly q = test::random_zpoly(rand_int(0, 6), 9);
        ZPoly r = test::random_zpoly(rand_int(0, 6), 9);
        EXPECT_EQ((p + q) * r, p * r + q * r);
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ(divexact(p * q, q), p);
    }
}

TEST(UniPoly, DivremIdentity) {
    for (int t = 0; t < 50; ++t) {
        UniPoly a = to_rational(test::random_zpoly(rand_int(0, 9), 20));
        UniPoly b = to_rational(test::random_zpoly(rand_int(0, 5), 20));
        UniPoly q, r;
        divrem(a, b, q, r);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Gcd, Basic) {
    EXPECT_EQ(poly_gcd(U("x^2 - 1"), U("x - 1")), U("x - 1"));
    EXPECT_EQ(poly_gcd(U("6*x^2 + 12*x"), UniPoly()), U("x^2 + 2*x"));
    EXPECT_EQ(poly_gcd(B("b^2 - c^2"), B("3*b + 3*c")), B("b + c"));
    EXPECT_EQ(poly_gcd(B("b*c^2 + b"), BiPoly()), B("b*c^2 + b"));
    EXPECT_EQ(poly_gcd(B("(b - c)*(b*c + 1)^2"), B("(b*c + 1)*(b + c^3)")), B("b*c + 1"));
}

TEST(Gcd, RandomCommonFactor) {
    for (int t = 0; t < 30; ++t) {
        ZPoly g = test::random_zpoly(rand_int(1, 4), 5);
        ZPoly a = test::random_zpoly(rand_int(0, 5), 5) * g;
        ZPoly b = test::random_zpoly(rand_int(0, 5), 5) * g;
        ZPoly h = gcd_Z(a, b);
        ZPoly q;
        EXPECT_TRUE(try_divexact(a, h, q));
        EXPECT_TRUE(try_divexact(b, h, q));
        EXPECT_TRUE(try_divexact(h, primitive_part(g), q));
    }
    for (int t = 0; t < 15; ++t) {
        BiPoly g = test::random_bipoly(3, 4, 3);
        if (g.total_degree() < 1) continue;
        BiPoly a = test::random_bipoly(3, 4, 4) * g;
        BiPoly b = test::random_bipoly(3, 4, 4) * g;
        if (a.is_zero() || b.is_zero()) continue;
        BiPoly h = poly_gcd(a, b);
        BiPoly q;
        EXPECT_TRUE(try_divexact(a, h, q));
        EXPECT_TRUE(try_divexact(b, h, q));
        EXPECT_TRUE(try_divexact(h, to_rational(primitive_normal(g)), q));
    }
}

TEST(Resultant, Linear) {
    // Res_x(x - a, x - b) = a - b up to sign
    ZPoly a = ZPoly::linear(BigInt(7)), b = ZPoly::linear(BigInt(-3));
    EXPECT_EQ(abs(resultant(a, b)), 10);
    EXPECT_EQ(resultant(U("x - 7"), U("x + 3")), Rational(10));
}

TEST(Resultant, MatchesSylvesterDeterminant) {
    for (int t = 0; t < 60; ++t) {
        ZPoly a = test::random_zpoly(rand_int(1, 7), 12);
        ZPoly b = test::random_zpoly(rand_int(1, 7), 12);
        EXPECT_EQ(Rational(resultant(a, b)), test::sylvester_resultant(a, b)) << to_string(a) << " / " << to_string(b);
        UniPoly ar = to_rational(a), br = to_rational(b);
        EXPECT_EQ(resultant(ar, br), test::sylvester_resultant(a, b));
    }
}

TEST(Resultant, NoEliminationVariable) {
    EXPECT_THROW(resultant(B("b^2 + 1"), B("b"), Var::c), std::invalid_argument);
}

TEST(Resultant, VanishesIffCommonRoot) {
    int checked = 0;
    while (checked < 100) {
        BiPoly p = test::random_bipoly(4, 5, 5), q = test::random_bipoly(4, 5, 5);
        if (p.deg_c() < 1 || q.deg_c() < 1) continue;
        if (rand_int(0, 3) == 0) {
            BiPoly g = test::random_bipoly(2, 3, 3);
            if (g.deg_c() >= 1) {
                p = p * g;
                q = q * g;
            }
        }
        if (p.deg_b() > 6 || q.deg_b() > 6 || p.deg_c() > 6 || q.deg_c() > 6) continue;
        UniPoly r = resultant(p, q, Var::c);
        Rational b0(rand_int(-30, 30), rand_int(1, 7));
        b0.canonicalize();
        UniPoly pc = specialize_b<Rational, Rational>(p, b0), qc = specialize_b<Rational, Rational>(q, b0);
        if (pc.degree() != p.deg_c() || qc.degree() != q.deg_c()) continue;  // leading coefficient vanished
        bool zero = r.is_zero() || is_zero(evaluate(r, b0));
        EXPECT_EQ(zero, gcd_Q(pc, qc).degree() > 0) << to_string(p) << " | " << to_string(q);
        ++checked;
    }
}

TEST(Resultant, BivariateAgreesWithSylvesterAtSpecialization) {
    for (int t = 0; t < 20; ++t) {
        BiPoly p = test::random_bipoly(4, 6, 5), q = test::random_bipoly(4, 6, 5);
        if (p.deg_c() < 1 || q.deg_c() < 1) continue;
        UniPoly r = resultant(p, q, Var::c);
        // ratio of normalized resultant to the Sylvester determinant is one constant
        Rational ratio;
        bool have = false;
        for (long b0 = 2; b0 < 9; ++b0) {
            UniPoly pc = specialize_b<Rational, Rational>(p, Rational(b0));
            UniPoly qc = specialize_b<Rational, Rational>(q, Rational(b0));
            if (pc.degree() != p.deg_c() || qc.degree() != q.deg_c()) continue;
            Rational s = test::sylvester_resultant(pc, qc), v = evaluate(r, Rational(b0));
            if (s == 0) {
                EXPECT_EQ(v, 0);
                continue;
            }
            Rational cur = v / s;
            if (have) {
                EXPECT_EQ(cur, ratio);
            }
            ratio = cur;
            have = true;
        }
    }
}

TEST(Factor, SmallExamples) {
    auto f = factor_over_Q(U("x^2 + 1"));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].first, U("x^2 + 1"));
    EXPECT_EQ(f[0].second, 1);

    f = factor_over_Q(U("x^4 - 1"));
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].first, U("x - 1"));
    EXPECT_EQ(f[1].first, U("x + 1"));
    EXPECT_EQ(f[2].first, U("x^2 + 1"));

    f = factor_over_Q(U("3*x^3*(x - 1/2)^2*(x^2 - 2)"));
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].first, U("x"));
    EXPECT_EQ(f[0].second, 3);
    EXPECT_EQ(f[1].first, U("2*x - 1"));
    EXPECT_EQ(f[1].second, 2);
    EXPECT_EQ(f[2].first, U("x^2 - 2"));
}

TEST(Factor, SwinnertonDyerIsIrreducible) {
    // every local factorization splits into quadratics
    UniPoly s = U("x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576");
    auto f = factor_over_Q(s);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].first.degree(), 8);
}

TEST(Factor, Cyclotomic105) {
    UniPoly x105 = U("x^105 - 1");
    auto f = factor_over_Q(x105);
    std::multiset<int> degs;
    for (auto& [g, e] : f) degs.insert(g.degree());
    EXPECT_EQ(degs, (std::multiset<int>{1, 2, 4, 6, 8, 12, 24, 48}));
    EXPECT_TRUE(same_up_to_unit(product(f), x105));
}

namespace {

// Rational-root screen: no root p/q with |p|, q <= 20.
bool has_small_rational_root(const UniPoly& f) {
    for (long q = 1; q <= 20; ++q)
        for (long p = -20; p <= 20; ++p) {
            Rational r(p, q);
            r.canonicalize();
            if (evaluate(f, r) == 0) return true;
        }
    return false;
}

}  // namespace

TEST(Factor, RemultiplicationAndIrreducibilityScreens) {
    for (int t = 0; t < 40; ++t) {
        UniPoly p(Rational(rand_int(1, 5)));
        int nf = rand_int(1, 4);
        for (int k = 0; k < nf; ++k) {
            UniPoly g = to_rational(test::random_zpoly(rand_int(1, 6), 7));
            p = p * pow(g, rand_int(1, 2));
        }
        auto f = factor_over_Q(p);
        EXPECT_TRUE(same_up_to_unit(product(f), p));
        int total = 0;
        for (auto& [g, e] : f) {
            total += g.degree() * e;
            ZPoly gz = to_integer(g);
            EXPECT_EQ(content(gz), 1);
            EXPECT_GT(sgn(gz.lc()), 0);
            if (g.degree() >= 2) {
                EXPECT_FALSE(has_small_rational_root(g)) << to_string(g);
                // degree patterns at three good primes must admit no proper factor degree
                std::set<int> common;
                bool first = true;
                int used = 0;
                for (fp::u64 pr = 101; used < 3; pr = fp::next_prime(pr + 1)) {
                    if (mod_ui(gz.lc(), pr) == 0) continue;
                    fp::Vec gm = fp::from_poly(gz, pr);
                    if (!fp::is_squarefree(gm, pr)) continue;
                    std::set<int> sums{0};
                    for (int d : fp::degree_pattern(gm, pr)) {
                        std::set<int> next = sums;
                        for (int s : sums) next.insert(s + d);
                        sums = std::move(next);
                    }
                    if (first) {
                        common = sums;
                    } else {
                        std::set<int> inter;
                        for (int s : sums)
                            if (common.count(s)) inter.insert(s);
                        common = std::move(inter);
                    }
                    first = false;
                    ++used;
                }
                EXPECT_TRUE(common.count(g.degree()));
            }
        }
        EXPECT_EQ(total, p.degree());
    }
}

TEST(Factor, PartialSmallFactors) {
    ZPoly f = to_integer(U("(x^2 + x + 1)*(x^6 - 325*x^5 + 5518*x^4 + 3655*x^3 + 718*x^2 + 51*x + 1)*(x - 3)"));
    SmallFactors sf = small_factors_Z(f, 2);
    ASSERT_EQ(sf.factors.size(), 2u);
    EXPECT_EQ(sf.cofactor.degree(), 6);
}

TEST(Factor, PartialAgreesWithFullFactorization) {
    // the full factorization is the oracle: small factors are exactly its
    // factors of bounded degree, and the cofactor is the product of the rest
    for (int t = 0; t < 40; ++t) {
        ZPoly f(BigInt(1));
        const int parts = static_cast<int>(rand_int(2, 5));
        for (int i = 0; i < parts; ++i) f = f * test::random_zpoly(rand_int(1, 4), 6);
        f = primitive_part(f);
        if (gcd_Q(to_rational(f), derivative(to_rational(f))).degree() > 0) continue;
        const int cap = static_cast<int>(rand_int(1, 4));
        auto full = factor_squarefree_Z(f);
        SmallFactors sf = small_factors_Z(f, cap);
        std::vector<ZPoly> expect;
        ZPoly rest(BigInt(1));
        for (auto& g : full) {
            if (g.degree() <= cap) expect.push_back(g);
            else rest = rest * g;
        }
        EXPECT_EQ(sf.factors, expect);
        EXPECT_EQ(primitive_part(sf.cofactor), primitive_part(rest));
    }
}

TEST(Fp, RootsAndDegreePatternAgainstBruteForce) {
    for (int t = 0; t < 30; ++t) {
        fp::u64 p = fp::next_prime(rand_int(20, 200));
        ZPoly f = test::random_zpoly(rand_int(1, 8), 50);
        fp::Vec fv = fp::from_poly(f, p);
        if (fp::deg(fv) < 1) continue;
        std::vector<fp::u64> brute;
        for (fp::u64 x = 0; x < p; ++x)
            if (fp::eval(fv, x, p) == 0) brute.push_back(x);
        auto r = fp::roots(fv, p, test::rng());
        std::sort(r.begin(), r.end());
        EXPECT_EQ(r, brute);
    }
}

TEST(Serialization, RoundTrip) {
    for (const char* s : {"b^2 - b*c - c^3", "b - c^2 - c", "-3*b^4*c + 2/7*b - 1/49", "c", "0", "1"}) {
        EXPECT_EQ(to_string(B(s)), s);
    }
    for (int t = 0; t < 50; ++t) {
        BiPoly p = test::random_bipoly(6, 50, 6);
        EXPECT_EQ(B(to_string(p)), p);
    }
    EXPECT_EQ(to_string(U("x^4 - 18*x^3 + 74*x^2 + 18*x + 1")), "x^4 - 18*x^3 + 74*x^2 + 18*x + 1");
    EXPECT_THROW(B("b + d"), std::invalid_argument);
}

TEST(Specialize, Examples) {
    EXPECT_EQ(specialize(B("b - c"), Rational(5, 3), Rational(5, 3)), 0);
    EXPECT_EQ(specialize(B("c"), Rational(11), Rational(0)), 0);
    UniPoly at_c2 = specialize_c<Rational, Rational>(B("b^2 - b*c - c^3"), Rational(2));
    EXPECT_EQ(at_c2, U("x^2 - 2*x - 8"));
}

TEST(RationalFunctionTest, NormalizationIdempotentAndUnique) {
    for (int t = 0; t < 20; ++t) {
        BiPoly n = test::random_bipoly(3, 5, 3), d = test::random_bipoly(3, 5, 3), g = test::random_bipoly(2, 3, 2);
        if (d.is_zero() || g.is_zero()) continue;
        RationalFunction a(n * g, d * g);
        EXPECT_EQ(a.normalized(), a);
        EXPECT_EQ(a.den().lc(), 1);
        RationalFunction b(Rational(3) * n, Rational(3) * d);
        EXPECT_EQ(a, b);
    }
    RationalFunction x = RationalFunction::b(), y = RationalFunction::c();
    RationalFunction s = x / y + y / x;
    EXPECT_EQ(s * (x * y), RationalFunction(B("b^2 + c^2")));
}
