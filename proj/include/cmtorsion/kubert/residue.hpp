#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmtorsion/arith/fp.hpp"
#include "cmtorsion/kubert/curve.hpp"
#include "cmtorsion/numberfield/numberfield.hpp"

namespace cmt {

// Finite field F_p[t]/(h) with h monic irreducible, q = p^deg h small enough
// to enumerate.
struct FqContext {
    std::uint64_t p = 0;
    fp::Vec h;
    int k = 1;
    std::uint64_t q = 0;
};

// Element of a small finite field. Like FieldElement, an element without a
// context is an integer constant that adopts the context it meets.
class Fq {
public:
    Fq() = default;
    Fq(long a) : s_(a) {}  // NOLINT
    Fq(std::shared_ptr<const FqContext> ctx, fp::Vec v);

    const std::shared_ptr<const FqContext>& ctx() const { return ctx_; }
    const fp::Vec& vec() const { return v_; }
    bool is_zero() const { return ctx_ ? v_.empty() : s_ == 0; }

    // Elements are numbered 0..q-1 by reading coordinates in base p.
    static Fq from_index(const std::shared_ptr<const FqContext>& ctx, std::uint64_t i);
    std::uint64_t index() const;

    friend Fq operator+(const Fq& a, const Fq& b);
    friend Fq operator-(const Fq& a, const Fq& b);
    friend Fq operator*(const Fq& a, const Fq& b);
    friend Fq operator/(const Fq& a, const Fq& b);
    Fq operator-() const { return Fq(0) - *this; }
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    friend bool operator==(const Fq& a, const Fq& b);
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

private:
    static std::shared_ptr<const FqContext> common(const Fq& a, const Fq& b);
    fp::Vec lift(const std::shared_ptr<const FqContext>& c) const;

    std::shared_ptr<const FqContext> ctx_;
    fp::Vec v_;
    long s_ = 0;
};

inline bool is_zero(const Fq& a) { return a.is_zero(); }
Fq inverse(const Fq& a);
inline Fq divexact(const Fq& a, const Fq& b) { return a / b; }

// A prime of K of degree one over an unramified rational prime, as the
// residue field together with the reduction map.
struct ResiduePrime {
    std::shared_ptr<const FqContext> field;
    NumberField K;
    // Reduction of an element whose coordinates are p-integral.
    std::optional<Fq> reduce(const FieldElement& a) const;
    std::optional<Fq> reduce(const Rational& a) const;
    std::uint64_t norm() const { return field->q; }
};

// Primes above the rational prime p with residue field size <= max_norm;
// empty when p divides the discriminant or a denominator of K's polynomial.
std::vector<ResiduePrime> primes_above(const NumberField& K, std::uint64_t p, std::uint64_t max_norm);

// #E(F_q) by enumerating x and counting square roots (q odd).
std::uint64_t count_points(const Weierstrass<Fq>& E);
// All points of E(F_q), infinity first.
std::vector<Point<Fq>> enumerate_points(const Weierstrass<Fq>& E);

// Reduction of a curve at a prime: nullopt when a coefficient is not
// integral there or the reduction is singular.
std::optional<Weierstrass<Fq>> reduce_curve(const Weierstrass<FieldElement>& E, const ResiduePrime& P);

}  // namespace cmt
