#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cmtorsion/arith/bipoly.hpp"
#include "cmtorsion/arith/zpoly.hpp"

namespace cmt {

class FieldElement;

// Absolute number field Q[x]/(f) with f monic and irreducible.
class NumberField {
public:
    struct Data {
        UniPoly poly;
        int degree = 1;
        std::string label;
    };

    // Q itself, presented as Q[x]/(x).
    NumberField();
    // f is made monic; irreducibility is checked unless verify is false.
    explicit NumberField(const UniPoly& f, std::string label = "", bool verify = true);

    explicit NumberField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    static NumberField rationals() { return NumberField(); }

    int degree() const { return d_->degree; }
    const UniPoly& poly() const { return d_->poly; }
    const std::string& label() const { return d_->label; }
    bool is_rational() const { return d_->degree == 1; }

    FieldElement gen() const;
    FieldElement zero() const;
    FieldElement one() const;
    FieldElement element(const Rational& a) const;
    FieldElement element(const UniPoly& p) const;  // p(gen)
    FieldElement element(const std::vector<Rational>& coords) const;

    const std::shared_ptr<const Data>& data() const { return d_; }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.d_ == b.d_ || a.d_->poly == b.d_->poly;
    }
    friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

private:
    std::shared_ptr<const Data> d_;
};

// Element of a number field in the power basis. An element without a field
// is a rational scalar and adopts the field of whatever it meets, so that
// generic code can write FieldElement(1).
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const Rational& a) : v_(a) {}  // NOLINT
    FieldElement(int a) : v_(Rational(a)) {}    // NOLINT
    FieldElement(std::shared_ptr<const NumberField::Data> K, UniPoly v);

    bool has_field() const { return static_cast<bool>(K_); }
    NumberField field() const;
    const std::shared_ptr<const NumberField::Data>& field_data() const { return K_; }

    // Reduced representative; coordinates are its coefficients.
    const UniPoly& poly() const { return v_; }
    std::vector<Rational> coords() const;
    bool is_zero() const { return v_.is_zero(); }
    bool is_rational() const { return v_.degree() <= 0; }
    Rational to_rational() const;  // requires is_rational()

    FieldElement operator-() const { return FieldElement(Reduced{}, K_, -v_); }
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v_ == b.v_; }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    struct Reduced {};
    FieldElement(Reduced, std::shared_ptr<const NumberField::Data> K, UniPoly v)
        : K_(std::move(K)), v_(std::move(v)) {}
    static std::shared_ptr<const NumberField::Data> common(const FieldElement& a, const FieldElement& b);

    std::shared_ptr<const NumberField::Data> K_;
    UniPoly v_;
};

inline bool is_zero(const FieldElement& a) { return a.is_zero(); }
FieldElement inverse(const FieldElement& a);
inline FieldElement divexact(const FieldElement& a, const FieldElement& b) { return a / b; }
inline bool try_divexact(const FieldElement& a, const FieldElement& b, FieldElement& q) {
    q = a / b;
    return true;
}
std::string to_string(const FieldElement& a, const std::string& var = "a");
Rational norm(const FieldElement& a);
// Characteristic polynomial of multiplication by a, in x.
UniPoly charpoly(const FieldElement& a);

using KPoly = Poly<FieldElement>;

KPoly to_kpoly(const UniPoly& p, const NumberField& K);
// Coefficients must all be rational.
UniPoly to_unipoly(const KPoly& p);
KPoly make_monic_k(const KPoly& p);
// Monic gcd over K.
KPoly gcd_k(const KPoly& a, const KPoly& b);
std::string to_string(const KPoly& p, const std::string& var = "x", const std::string& gen = "a");

// Norm N_{K/Q} of a polynomial over K, as a polynomial over Q (monic input
// gives monic output).
UniPoly norm_poly(const KPoly& p, const NumberField& K);

// Irreducible monic factors over K with multiplicities, ordered by degree
// and then by the canonical string. Uses Trager's algorithm.
std::vector<std::pair<KPoly, int>> factor_over_K(const KPoly& p, const NumberField& K);
std::vector<std::pair<KPoly, int>> factor_over_K(const UniPoly& p, const NumberField& K);
// Monic irreducible factors over K of degree at most max_degree of the
// squarefree part of p, without completing the factorization.
std::vector<KPoly> small_factors_over_K(const KPoly& p, const NumberField& K, int max_degree);
// Distinct roots in K, without a full factorization.
std::vector<FieldElement> roots_in_K(const KPoly& p, const NumberField& K);

UniPoly cyclotomic_poly(unsigned n);
// [K(zeta_n) : Q].
int compositum_degree(const NumberField& K, unsigned n);
bool is_square_in_K(const Rational& delta, const NumberField& K);

struct Extension {
    NumberField field;       // absolute field of degree [K:Q] deg p
    FieldElement base_gen;   // image of the generator of K
    FieldElement root;       // image of the adjoined root of p
    int shift = 0;           // primitive element root + shift * gen(K)
    FieldElement embed(const FieldElement& a) const;
    KPoly embed(const KPoly& p) const;
};
// Absolute field generated over K by a root of p (irreducible over K).
Extension extend_by(const NumberField& K, const KPoly& p);

}  // namespace cmt
