#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cmtorsion/arith/poly.hpp"
#include "cmtorsion/arith/scalar.hpp"

// Dense polynomial arithmetic over F_p for word-size primes p < 2^62.
namespace cmt::fp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Vec = std::vector<u64>;  // ascending coefficients, trimmed

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 r = a + b;
    return r >= p ? r - p : r;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);

u64 reduce(const BigInt& a, u64 p);
// Throws std::domain_error when p divides the denominator.
u64 reduce(const Rational& a, u64 p);
bool reducible_at(const Rational& a, u64 p);  // p does not divide the denominator

void trim(Vec& a);
inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }

Vec add(const Vec& a, const Vec& b, u64 p);
Vec sub(const Vec& a, const Vec& b, u64 p);
Vec mul(const Vec& a, const Vec& b, u64 p);
Vec scale(const Vec& a, u64 s, u64 p);
void divrem(const Vec& a, const Vec& b, Vec& q, Vec& r, u64 p);
Vec rem(const Vec& a, const Vec& b, u64 p);
Vec quo(const Vec& a, const Vec& b, u64 p);
Vec monic(const Vec& a, u64 p);
Vec gcd(Vec a, Vec b, u64 p);
Vec xgcd(const Vec& a, const Vec& b, Vec& s, Vec& t, u64 p);
Vec deriv(const Vec& a, u64 p);
Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& f, u64 p);
Vec powmod_poly(const Vec& base, const BigInt& e, const Vec& f, u64 p);
u64 eval(const Vec& a, u64 x, u64 p);
bool is_squarefree(const Vec& f, u64 p);

Vec from_poly(const Poly<BigInt>& a, u64 p);
Vec from_poly(const Poly<Rational>& a, u64 p);
Poly<BigInt> to_poly(const Vec& a);

// Distinct-degree factorization of a monic squarefree f: pairs (product of
// all irreducible factors of degree d, d).
std::vector<std::pair<Vec, int>> distinct_degree(const Vec& f, u64 p);
// Equal-degree splitting of g (product of irreducibles of degree d); p odd.
std::vector<Vec> equal_degree(const Vec& g, int d, u64 p, std::mt19937_64& rng);
// Monic irreducible factors of a monic squarefree polynomial; p odd.
std::vector<Vec> factor_squarefree(const Vec& f, u64 p, std::mt19937_64& rng);
// Multiset of irreducible factor degrees of a monic squarefree polynomial.
std::vector<int> degree_pattern(const Vec& f, u64 p);
// Roots in F_p (p odd), sorted.
std::vector<u64> roots(const Vec& f, u64 p, std::mt19937_64& rng);

bool is_prime(u64 n);
u64 next_prime(u64 n);  // smallest prime > n

}  // namespace cmt::fp
