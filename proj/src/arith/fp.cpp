#include "cmtorsion/arith/fp.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmt::fp {

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    // Extended Euclid on signed 128-bit values.
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

u64 reduce(const BigInt& a, u64 p) { return mod_ui(a, p); }

u64 reduce(const Rational& a, u64 p) {
    u64 d = mod_ui(a.get_den(), p);
    if (d == 0) throw std::domain_error("denominator divisible by p");
    return mulmod(mod_ui(a.get_num(), p), invmod(d, p), p);
}

bool reducible_at(const Rational& a, u64 p) { return mod_ui(a.get_den(), p) != 0; }

void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec add(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = addmod(r[i], b[i], p);
    trim(r);
    return r;
}

Vec sub(const Vec& a, const Vec& b, u64 p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = submod(r[i], b[i], p);
    trim(r);
    return r;
}

Vec mul(const Vec& a, const Vec& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size(), m = b.size();
    // Accumulate in 128 bits and reduce lazily; products are < 2^124 so
    // up to 16 terms fit before a reduction is required.
    std::vector<u128> acc(n + m - 1, 0);
    std::vector<unsigned> cnt(n + m - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            u128& s = acc[i + j];
            s += (u128)a[i] * b[j];
            if (++cnt[i + j] == 15) {
                s %= p;
                cnt[i + j] = 0;
            }
        }
    }
    Vec r(n + m - 1);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = static_cast<u64>(acc[k] % p);
    trim(r);
    return r;
}

Vec scale(const Vec& a, u64 s, u64 p) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
    trim(r);
    return r;
}

void divrem(const Vec& a, const Vec& b, Vec& q, Vec& r, u64 p) {
    if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
    r = a;
    if (a.size() < b.size()) {
        q.clear();
        return;
    }
    const int db = deg(b);
    q.assign(a.size() - b.size() + 1, 0);
    u64 inv = invmod(b.back(), p);
    for (int k = deg(a); k >= db; --k) {
        u64 c = r[k];
        if (c == 0) continue;
        u64 t = mulmod(c, inv, p);
        q[k - db] = t;
        for (int i = 0; i <= db; ++i) r[k - db + i] = submod(r[k - db + i], mulmod(t, b[i], p), p);
    }
    trim(r);
    trim(q);
}

Vec rem(const Vec& a, const Vec& b, u64 p) {
    Vec q, r;
    divrem(a, b, q, r, p);
    return r;
}

Vec quo(const Vec& a, const Vec& b, u64 p) {
    Vec q, r;
    divrem(a, b, q, r, p);
    return q;
}

Vec monic(const Vec& a, u64 p) {
    if (a.empty()) return a;
    return scale(a, invmod(a.back(), p), p);
}

Vec gcd(Vec a, Vec b, u64 p) {
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Vec xgcd(const Vec& a, const Vec& b, Vec& s, Vec& t, u64 p) {
    Vec r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
    while (!r1.empty()) {
        Vec q, r;
        divrem(r0, r1, q, r, p);
        Vec s2 = sub(s0, mul(q, s1, p), p);
        Vec t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) {
        s.clear();
        t.clear();
        return r0;
    }
    u64 inv = invmod(r0.back(), p);
    s = scale(s0, inv, p);
    t = scale(t0, inv, p);
    return scale(r0, inv, p);
}

Vec deriv(const Vec& a, u64 p) {
    if (a.size() <= 1) return {};
    Vec r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
    trim(r);
    return r;
}

Vec mulmod_poly(const Vec& a, const Vec& b, const Vec& f, u64 p) { return rem(mul(a, b, p), f, p); }

Vec powmod_poly(const Vec& base, const BigInt& e, const Vec& f, u64 p) {
    Vec r{1};
    r = rem(r, f, p);
    Vec b = rem(base, f, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return r;
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod_poly(r, r, f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod_poly(r, b, f, p);
    }
    return r;
}

u64 eval(const Vec& a, u64 x, u64 p) {
    u64 r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = addmod(mulmod(r, x, p), a[i], p);
    return r;
}

bool is_squarefree(const Vec& f, u64 p) {
    if (f.size() <= 2) return true;
    Vec d = deriv(f, p);
    if (d.empty()) return false;
    return deg(gcd(f, d, p)) == 0;
}

Vec from_poly(const Poly<BigInt>& a, u64 p) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce(a[i], p);
    trim(r);
    return r;
}

Vec from_poly(const Poly<Rational>& a, u64 p) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce(a[i], p);
    trim(r);
    return r;
}

Poly<BigInt> to_poly(const Vec& a) {
    std::vector<BigInt> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = BigInt(static_cast<unsigned long>(a[i]));
    return Poly<BigInt>(std::move(v));
}

namespace {

// Rows x^(i*p) mod f for i < deg f: applying the matrix to h gives h^p mod f.
std::vector<Vec> frobenius_matrix(const Vec& f, u64 p) {
    const int n = deg(f);
    std::vector<Vec> rows(n);
    Vec xp = powmod_poly(Vec{0, 1}, BigInt(static_cast<unsigned long>(p)), f, p);
    rows[0] = Vec{1};
    if (n > 1) rows[1] = xp;
    for (int i = 2; i < n; ++i) rows[i] = mulmod_poly(rows[i - 1], xp, f, p);
    return rows;
}

Vec apply_frobenius(const std::vector<Vec>& rows, const Vec& h, u64 p) {
    const std::size_t n = rows.size();
    std::vector<u128> acc(n, 0);
    std::vector<unsigned> cnt(n, 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0) continue;
        const Vec& row = rows[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            acc[j] += (u128)h[i] * row[j];
            if (++cnt[j] == 15) {
                acc[j] %= p;
                cnt[j] = 0;
            }
        }
    }
    Vec r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = static_cast<u64>(acc[j] % p);
    trim(r);
    return r;
}

}  // namespace

std::vector<std::pair<Vec, int>> distinct_degree(const Vec& f0, u64 p) {
    std::vector<std::pair<Vec, int>> out;
    Vec f = monic(f0, p);
    if (deg(f) <= 0) return out;
    if (deg(f) == 1) {
        out.emplace_back(f, 1);
        return out;
    }
    std::vector<Vec> rows = frobenius_matrix(f, p);
    Vec h = Vec{0, 1};
    for (int d = 1; 2 * d <= deg(f); ++d) {
        h = rem(apply_frobenius(rows, h, p), f, p);
        Vec g = gcd(f, sub(h, Vec{0, 1}, p), p);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = quo(f, g, p);
            h = rem(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

std::vector<Vec> equal_degree(const Vec& g, int d, u64 p, std::mt19937_64& rng) {
    std::vector<Vec> done;
    std::vector<Vec> todo{monic(g, p)};
    BigInt q = ipow(BigInt(static_cast<unsigned long>(p)), d);
    BigInt e = (q - 1) / 2;
    while (!todo.empty()) {
        Vec cur = std::move(todo.back());
        todo.pop_back();
        if (deg(cur) == d) {
            done.push_back(std::move(cur));
            continue;
        }
        for (;;) {
            Vec a(deg(cur));
            for (auto& x : a) x = rng() % p;
            trim(a);
            if (deg(a) < 1) continue;
            Vec b = powmod_poly(a, e, cur, p);
            b = sub(b, Vec{1}, p);
            Vec s = gcd(cur, b, p);
            if (deg(s) > 0 && deg(s) < deg(cur)) {
                Vec t = quo(cur, s, p);
                todo.push_back(std::move(s));
                todo.push_back(monic(t, p));
                break;
            }
        }
    }
    return done;
}

std::vector<Vec> factor_squarefree(const Vec& f, u64 p, std::mt19937_64& rng) {
    std::vector<Vec> out;
    for (auto& [g, d] : distinct_degree(f, p)) {
        auto parts = equal_degree(g, d, p, rng);
        out.insert(out.end(), parts.begin(), parts.end());
    }
    std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    return out;
}

std::vector<int> degree_pattern(const Vec& f, u64 p) {
    std::vector<int> out;
    for (auto& [g, d] : distinct_degree(f, p))
        for (int k = 0; k < deg(g) / d; ++k) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<u64> roots(const Vec& f0, u64 p, std::mt19937_64& rng) {
    std::vector<u64> out;
    Vec f = monic(f0, p);
    if (deg(f) <= 0) return out;
    // Restrict to the product of distinct linear factors.
    Vec xp = powmod_poly(Vec{0, 1}, BigInt(static_cast<unsigned long>(p)), f, p);
    Vec g = gcd(f, sub(xp, Vec{0, 1}, p), p);
    if (deg(g) <= 0) return out;
    if (p == 2) {
        for (u64 x = 0; x < 2; ++x)
            if (eval(g, x, p) == 0) out.push_back(x);
        return out;
    }
    for (auto& lin : equal_degree(g, 1, p, rng)) out.push_back(submod(0, lin[0], p));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

u64 next_prime(u64 n) {
    u64 c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

}  // namespace cmt::fp
