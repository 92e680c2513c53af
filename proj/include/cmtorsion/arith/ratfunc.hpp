#pragma once

#include <string>

#include "cmtorsion/arith/bipoly.hpp"

namespace cmt {

// Element of Q(b, c) kept as num/den in lowest terms, with the lex-leading
// coefficient of den equal to 1.
class RationalFunction {
public:
    RationalFunction() : den_(Rational(1)) {}
    RationalFunction(const Rational& a) : num_(a), den_(Rational(1)) {}  // NOLINT
    RationalFunction(int a) : RationalFunction(Rational(a)) {}          // NOLINT
    RationalFunction(const BiPoly& p) : num_(p), den_(Rational(1)) {}  // NOLINT
    RationalFunction(const BiPoly& num, const BiPoly& den);

    static RationalFunction b() { return RationalFunction(BiPoly::b()); }
    static RationalFunction c() { return RationalFunction(BiPoly::c()); }

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator-(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator*(const RationalFunction& x, const RationalFunction& y);
    friend RationalFunction operator/(const RationalFunction& x, const RationalFunction& y);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    friend bool operator==(const RationalFunction& x, const RationalFunction& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const RationalFunction& x, const RationalFunction& y) { return !(x == y); }

    // Recomputes the canonical form from the stored pair.
    RationalFunction normalized() const { return RationalFunction(num_, den_); }

private:
    struct Raw {};
    RationalFunction(Raw, BiPoly n, BiPoly d) : num_(std::move(n)), den_(std::move(d)) {}

    BiPoly num_, den_;
};

inline bool is_zero(const RationalFunction& a) { return a.is_zero(); }
RationalFunction inverse(const RationalFunction& a);
inline RationalFunction divexact(const RationalFunction& a, const RationalFunction& b) { return a / b; }
std::string to_string(const RationalFunction& a);

}  // namespace cmt
