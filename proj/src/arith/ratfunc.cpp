#include "cmtorsion/arith/ratfunc.hpp"

#include <stdexcept>

namespace cmt {

namespace {

bool is_constant(const BiPoly& p) { return p.is_zero() || (p.size() == 1 && p.lead_key() == 0); }

}  // namespace

RationalFunction::RationalFunction(const BiPoly& num, const BiPoly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = BiPoly(Rational(1));
        return;
    }
    BiPoly n = num, d = den;
    if (!is_constant(d) && !is_constant(n)) {
        BiPoly g = poly_gcd(n, d);
        if (!is_constant(g)) {
            n = divexact(n, g);
            d = divexact(d, g);
        }
    }
    Rational s = inverse(d.lc());
    num_ = s * n;
    den_ = s * d;
}

RationalFunction RationalFunction::operator-() const { return RationalFunction(Raw{}, -num_, den_); }

RationalFunction operator+(const RationalFunction& x, const RationalFunction& y) {
    if (x.den_ == y.den_) return RationalFunction(x.num_ + y.num_, x.den_);
    return RationalFunction(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

RationalFunction operator-(const RationalFunction& x, const RationalFunction& y) { return x + (-y); }

RationalFunction operator*(const RationalFunction& x, const RationalFunction& y) {
    return RationalFunction(x.num_ * y.num_, x.den_ * y.den_);
}

RationalFunction operator/(const RationalFunction& x, const RationalFunction& y) {
    if (y.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(x.num_ * y.den_, x.den_ * y.num_);
}

RationalFunction inverse(const RationalFunction& a) { return RationalFunction(1) / a; }

std::string to_string(const RationalFunction& a) {
    if (a.den() == BiPoly(Rational(1))) return to_string(a.num());
    return "(" + to_string(a.num()) + ")/(" + to_string(a.den()) + ")";
}

}  // namespace cmt
