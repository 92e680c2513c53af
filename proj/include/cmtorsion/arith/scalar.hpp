#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cmt {

using BigInt = mpz_class;
using Rational = mpq_class;

// Ring hooks used by the generic polynomial code.

inline bool is_zero(const BigInt& a) { return sgn(a) == 0; }
inline bool is_zero(const Rational& a) { return sgn(a) == 0; }

inline BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}
inline Rational divexact(const Rational& a, const Rational& b) { return Rational(a / b); }

inline Rational inverse(const Rational& a) { return Rational(Rational(1) / a); }

// True when b divides a exactly; q receives the quotient.
inline bool try_divexact(const BigInt& a, const BigInt& b, BigInt& q) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
}
inline bool try_divexact(const Rational& a, const Rational& b, Rational& q) {
    q = a / b;
    return true;
}

inline std::string to_string(const BigInt& a) { return a.get_str(); }
inline std::string to_string(const Rational& a) { return a.get_str(); }

inline BigInt ipow(const BigInt& a, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline std::uint64_t mod_ui(const BigInt& a, std::uint64_t p) {
    // mpz_fdiv_ui takes unsigned long, which is 64 bits on the supported targets.
    return mpz_fdiv_ui(a.get_mpz_t(), p);
}

namespace detail {
// Dispatches through argument-dependent lookup so hooks declared after the
// generic containers are still found.
template <class T>
bool is_zero_(const T& a) {
    return is_zero(a);
}
}  // namespace detail

// Symmetric residue of a modulo m, in (-m/2, m/2].
inline BigInt symmetric_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

}  // namespace cmt
