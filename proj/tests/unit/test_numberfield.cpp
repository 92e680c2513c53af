#include <gtest/gtest.h>

#include "cmtorsion/numberfield/numberfield.hpp"
#include "test_support.hpp"

using namespace cmt;

namespace {

UniPoly U(const std::string& s) { return parse_unipoly(s); }

NumberField zeta3() { return NumberField(U("x^2 + x + 1"), "Q(zeta3)"); }
NumberField zeta4() { return NumberField(U("x^2 + 1"), "Q(i)"); }

KPoly product(const std::vector<std::pair<KPoly, int>>& fs, const NumberField& K) {
    KPoly r(K.one());
    for (auto& [f, e] : fs) r = r * pow(f, e);
    return r;
}

bool is_rational_square(const Rational& r) {
    return sgn(r) >= 0 && mpz_perfect_square_p(r.get_num_mpz_t()) && mpz_perfect_square_p(r.get_den_mpz_t());
}

}  // namespace

TEST(NumberFieldTest, Arithmetic) {
    NumberField K = zeta3();
    FieldElement z = K.gen();
    EXPECT_EQ(z * (z * z), K.one());
    EXPECT_EQ((z + 1) * z, K.element(Rational(-1)));
    NumberField Ki = zeta4();
    EXPECT_EQ(Ki.gen() * Ki.gen(), Ki.element(Rational(-1)));
    FieldElement w = z * 3 + 2;
    EXPECT_EQ(w * inverse(w), K.one());
    EXPECT_THROW(inverse(K.zero()), std::domain_error);
    EXPECT_THROW(NumberField(U("x^2 - 1")), std::invalid_argument);
}

TEST(NumberFieldTest, NormAndCharpoly) {
    NumberField K = zeta3();
    FieldElement a = K.gen() * 2 + 1;  // sqrt(-3)
    EXPECT_EQ(norm(a), 3);
    EXPECT_EQ(charpoly(a), U("x^2 + 3"));
}

TEST(Cyclotomic, Polynomials) {
    EXPECT_EQ(cyclotomic_poly(1), U("x - 1"));
    EXPECT_EQ(cyclotomic_poly(4), U("x^2 + 1"));
    // oracle: x^21 - 1 divided by the lower cyclotomic factors
    UniPoly q = divexact(U("x^21 - 1"), U("(x - 1)*(x^2 + x + 1)*(x^6 + x^5 + x^4 + x^3 + x^2 + x + 1)"));
    EXPECT_EQ(cyclotomic_poly(21), q);
    EXPECT_EQ(q.degree(), 12);
}

TEST(FactorOverK, Examples) {
    NumberField K3 = zeta3();
    auto f = factor_over_K(cyclotomic_poly(7), K3);
    ASSERT_EQ(f.size(), 1u);  // Q(zeta3) and Q(zeta7) are linearly disjoint
    for (auto& [g, e] : f) EXPECT_EQ(g.degree(), 6);
    EXPECT_EQ(product(f, K3), to_kpoly(cyclotomic_poly(7), K3));

    NumberField Ki = zeta4();
    f = factor_over_K(U("x^2 + 1"), Ki);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].first.degree(), 1);
    EXPECT_EQ(f[1].first.degree(), 1);
    EXPECT_EQ(f[0].first[0] * f[1].first[0], Ki.one());

    f = factor_over_K(U("x^2 - 2"), K3);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].first.degree(), 2);
    // oracle: (u + v z)^2 = (u^2 - v^2) + (2uv - v^2) z = 2 forces v = 0 or v = 2u
    // giving u^2 = 2 or -3u^2 = 2, neither rational
    EXPECT_FALSE(is_rational_square(Rational(2)));
    EXPECT_FALSE(is_rational_square(Rational(-2, 3)));
}

TEST(FactorOverK, RemultiplicationRandom) {
    NumberField K(U("x^3 - x - 1"));
    for (int t = 0; t < 12; ++t) {
        KPoly p(K.one());
        int nf = test::rand_int(1, 3);
        for (int k = 0; k < nf; ++k) {
            std::vector<FieldElement> c;
            int d = test::rand_int(1, 3);
            for (int i = 0; i <= d; ++i)
                c.push_back(K.element(std::vector<Rational>{Rational(test::rand_int(-3, 3)), Rational(test::rand_int(-3, 3)),
                                                            Rational(test::rand_int(-3, 3))}));
            c.back() = K.one();
            p = p * pow(KPoly(c), test::rand_int(1, 2));
        }
        auto f = factor_over_K(p, K);
        EXPECT_EQ(product(f, K), make_monic_k(p));
        int total = 0;
        for (auto& [g, e] : f) total += g.degree() * e;
        EXPECT_EQ(total, p.degree());
    }
}

TEST(Compositum, Degrees) {
    EXPECT_EQ(compositum_degree(NumberField(), 9), 6);
    EXPECT_EQ(compositum_degree(NumberField(), 7), 6);
    EXPECT_EQ(compositum_degree(zeta3(), 7), 12);
    EXPECT_EQ(compositum_degree(zeta3(), 3), 2);
    EXPECT_EQ(compositum_degree(zeta3(), 12), 4);
    NumberField K(U("x^3 - 2"));
    for (unsigned n : {3u, 4u, 5u, 8u, 9u}) {
        int cd = compositum_degree(K, n);
        EXPECT_EQ(cd % 3, 0);
        EXPECT_EQ((3 * cyclotomic_poly(n).degree()) % cd, 0);
    }
}

TEST(SquareInK, Examples) {
    EXPECT_TRUE(is_square_in_K(Rational(1), zeta3()));
    NumberField K(U("x^2 + x - 1"));
    FieldElement s = K.gen() * 2 + 1;
    EXPECT_EQ(s * s, K.element(Rational(5)));
    EXPECT_TRUE(is_square_in_K(Rational(5), K));
    EXPECT_FALSE(is_square_in_K(Rational(2), NumberField()));
    EXPECT_TRUE(is_square_in_K(Rational(-3), zeta3()));
    EXPECT_FALSE(is_square_in_K(Rational(-1), zeta3()));
    for (long r : {2L, 3L, 5L, -3L, -15L})
        for (long d : {2L, 3L, 7L}) {
            Rational dr(d * d * r);
            EXPECT_EQ(is_square_in_K(dr, K), is_square_in_K(Rational(r), K));
        }
}

TEST(ExtendBy, Examples) {
    Extension e = extend_by(NumberField(), to_kpoly(U("x^2 + 1"), NumberField()));
    EXPECT_EQ(e.field.degree(), 2);
    EXPECT_EQ(e.root * e.root, e.field.element(Rational(-1)));

    NumberField K3 = zeta3();
    auto f = factor_over_K(cyclotomic_poly(7), K3);
    Extension e2 = extend_by(K3, f[0].first);
    EXPECT_EQ(e2.field.degree(), 12);
    EXPECT_TRUE(evaluate(K3.poly(), e2.base_gen).is_zero());
    EXPECT_TRUE(evaluate(cyclotomic_poly(7), e2.root).is_zero());
    EXPECT_EQ(compositum_degree(e2.field, 7), 12);

    NumberField K7(U("x^2 + 7"));
    KPoly cubic = to_kpoly(U("x^3 + 5*x^2 + 2/7*x - 1/49"), K7);
    Extension e3 = extend_by(K7, cubic);
    EXPECT_EQ(e3.field.degree(), 6);
    EXPECT_TRUE(evaluate(e3.embed(cubic), e3.root).is_zero());
}
