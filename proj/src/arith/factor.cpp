#include "cmtorsion/arith/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cmtorsion/arith/fp.hpp"

namespace cmt {

namespace {

using fp::u64;
using ZVec = std::vector<BigInt>;

// ---- arithmetic on integer coefficient vectors modulo m ----

void zreduce(ZVec& a, const BigInt& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZVec zmul(const ZVec& a, const ZVec& b, const BigInt& m) {
    if (a.empty() || b.empty()) return {};
    ZVec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    zreduce(r, m);
    return r;
}

ZVec zadd(const ZVec& a, const ZVec& b, const BigInt& m) {
    ZVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    zreduce(r, m);
    return r;
}

ZVec zsub(const ZVec& a, const ZVec& b, const BigInt& m) {
    ZVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    zreduce(r, m);
    return r;
}

// Division by a monic polynomial modulo m.
void zdivrem_monic(const ZVec& a, const ZVec& b, ZVec& q, ZVec& r, const BigInt& m) {
    r = a;
    const int db = static_cast<int>(b.size()) - 1;
    const int da = static_cast<int>(a.size()) - 1;
    if (da < db) {
        q.clear();
        return;
    }
    q.assign(da - db + 1, BigInt(0));
    for (int k = da; k >= db; --k) {
        BigInt t = r[k];
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        if (sgn(t) == 0) continue;
        q[k - db] = t;
        for (int i = 0; i <= db; ++i) r[k - db + i] -= t * b[i];
    }
    zreduce(r, m);
    zreduce(q, m);
}

ZVec to_zvec(const fp::Vec& a) {
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = BigInt(static_cast<unsigned long>(a[i]));
    return r;
}

ZVec scale_mod(const ZVec& a, const BigInt& s, const BigInt& m) {
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    zreduce(r, m);
    return r;
}

BigInt inv_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("non-invertible leading coefficient in Hensel lifting");
    return r;
}

// One quadratic Hensel step: from modulus m to M (m | M | m^2).
void hensel_step(const ZVec& f, ZVec& g, ZVec& h, ZVec& s, ZVec& t, const BigInt& M) {
    ZVec e = zsub(f, zmul(g, h, M), M);
    ZVec q, r;
    zdivrem_monic(zmul(s, e, M), h, q, r, M);
    ZVec gs = zadd(zadd(g, zmul(t, e, M), M), zmul(q, g, M), M);
    ZVec hs = zadd(h, r, M);
    ZVec b = zsub(zadd(zmul(s, gs, M), zmul(t, hs, M), M), ZVec{BigInt(1)}, M);
    ZVec c, d;
    zdivrem_monic(zmul(s, b, M), hs, c, d, M);
    ZVec ss = zsub(s, d, M);
    ZVec ts = zsub(zsub(t, zmul(t, b, M), M), zmul(c, gs, M), M);
    g = std::move(gs);
    h = std::move(hs);
    s = std::move(ss);
    t = std::move(ts);
}

// Lifts a factorization f = lc(f) * prod(locals) mod p to modulus P = p^k.
// Returns monic factors modulo P.
void lift_tree(const ZVec& f, const std::vector<fp::Vec>& locals, std::size_t lo, std::size_t hi, u64 p,
               const BigInt& P, std::vector<ZVec>& out) {
    if (hi - lo == 1) {
        BigInt li = inv_mod(f.back(), P);
        out[lo] = scale_mod(f, li, P);
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    fp::Vec g0{fp::reduce(f.back(), p)};
    for (std::size_t i = lo; i < mid; ++i) g0 = fp::mul(g0, locals[i], p);
    fp::Vec h0{1};
    for (std::size_t i = mid; i < hi; ++i) h0 = fp::mul(h0, locals[i], p);
    fp::Vec s0, t0;
    fp::Vec one = fp::xgcd(g0, h0, s0, t0, p);
    if (fp::deg(one) != 0) throw std::logic_error("local factors not coprime");
    ZVec g = to_zvec(g0), h = to_zvec(h0), s = to_zvec(s0), t = to_zvec(t0);
    BigInt m = BigInt(static_cast<unsigned long>(p));
    while (m < P) {
        BigInt M = m * m;
        if (M > P) M = P;
        hensel_step(f, g, h, s, t, M);
        m = M;
    }
    lift_tree(g, locals, lo, mid, p, P, out);
    lift_tree(h, locals, mid, hi, p, P, out);
}

std::set<int> subset_sums(const std::vector<int>& degs, int n) {
    std::vector<char> can(n + 1, 0);
    can[0] = 1;
    for (int d : degs)
        for (int s = n; s >= d; --s)
            if (can[s - d]) can[s] = 1;
    std::set<int> out;
    for (int s = 0; s <= n; ++s)
        if (can[s]) out.insert(s);
    return out;
}

struct PrimeChoice {
    u64 p = 0;
    std::vector<int> pattern;
};

bool good_prime(const ZPoly& f, u64 p, fp::Vec& fm) {
    if (mod_ui(f.lc(), p) == 0) return false;
    fm = fp::from_poly(f, p);
    return fp::is_squarefree(fm, p);
}

// Chooses a prime minimizing the number of local factors and accumulates the
// admissible factor degrees over the primes examined.
PrimeChoice choose_prime(const ZPoly& f, int tries, std::set<int>& admissible) {
    const int n = f.degree();
    PrimeChoice best;
    admissible.clear();
    for (int s = 0; s <= n; ++s) admissible.insert(s);
    int good = 0;
    u64 p = 2;
    for (int attempts = 0; good < tries && attempts < 400; ++attempts) {
        p = fp::next_prime(p);
        fp::Vec fm;
        if (!good_prime(f, p, fm)) continue;
        ++good;
        std::vector<int> pat = fp::degree_pattern(fp::monic(fm, p), p);
        std::set<int> sums = subset_sums(pat, n);
        std::set<int> inter;
        std::set_intersection(admissible.begin(), admissible.end(), sums.begin(), sums.end(),
                              std::inserter(inter, inter.begin()));
        admissible = std::move(inter);
        if (best.p == 0 || pat.size() < best.pattern.size()) {
            best.p = p;
            best.pattern = pat;
        }
        if (admissible.size() == 2) break;  // only 0 and n: irreducible
    }
    if (best.p == 0) throw std::runtime_error("no good prime for factorization");
    return best;
}

BigInt norm2_ceil(const ZPoly& f) {
    BigInt s = 0;
    for (const auto& c : f.coeffs()) s += c * c;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    return r + 1;
}

ZPoly symmetric_poly(const ZVec& a, const BigInt& P) {
    ZVec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = symmetric_mod(a[i], P);
    return ZPoly(std::move(v));
}

bool poly_less(const ZPoly& a, const ZPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

// Zassenhaus recombination. max_degree < 0 means a complete factorization.
SmallFactors zassenhaus(const ZPoly& f0, int max_degree) {
    SmallFactors res;
    ZPoly f = primitive_part(f0);
    const int n = f.degree();
    if (n <= 0) {
        res.cofactor = f;
        return res;
    }
    const bool full = max_degree < 0 || max_degree >= n;
    if (n == 1) {
        if (full || max_degree >= 1) res.factors.push_back(f);
        else res.cofactor = f;
        if (res.factors.empty()) return res;
        res.cofactor = ZPoly(BigInt(1));
        return res;
    }
    std::set<int> admissible;
    PrimeChoice pc = choose_prime(f, 6, admissible);
    if (admissible.size() == 2) {
        if (full) {
            res.factors.push_back(f);
            res.cofactor = ZPoly(BigInt(1));
        } else {
            res.cofactor = f;
        }
        return res;
    }
    const int dmax = full ? n : max_degree;
    // Nothing admissible below the degree cap.
    bool any = false;
    for (int d : admissible)
        if (d >= 1 && d <= dmax && d < n) any = true;
    if (!any) {
        if (full) {
            res.factors.push_back(f);
            res.cofactor = ZPoly(BigInt(1));
        } else {
            res.cofactor = f;
        }
        return res;
    }

    const u64 p = pc.p;
    std::mt19937_64 rng(0x5eed1234ULL + p);
    fp::Vec fm = fp::monic(fp::from_poly(f, p), p);
    std::vector<fp::Vec> locals = fp::factor_squarefree(fm, p, rng);
    const std::size_t r = locals.size();
    if (r == 1) {
        if (full) {
            res.factors.push_back(f);
            res.cofactor = ZPoly(BigInt(1));
        } else {
            res.cofactor = f;
        }
        return res;
    }

    // Coefficient bound for a factor of degree <= dmax.
    BigInt bound = norm2_ceil(f) * ipow(BigInt(2), static_cast<unsigned long>(dmax)) * abs(f.lc()) * 2 + 1;
    BigInt P = BigInt(static_cast<unsigned long>(p));
    while (P <= bound) P *= BigInt(static_cast<unsigned long>(p));

    std::vector<ZVec> lifted(r);
    ZVec fz(f.coeffs().begin(), f.coeffs().end());
    lift_tree(fz, locals, 0, r, p, P, lifted);

    std::vector<int> degs(r);
    for (std::size_t i = 0; i < r; ++i) degs[i] = fp::deg(locals[i]);

    std::vector<std::size_t> remaining(r);
    std::iota(remaining.begin(), remaining.end(), 0);

    for (std::size_t s = 1;; ++s) {
        if (full && 2 * s > remaining.size()) break;
        if (!full) {
            // Smallest s local factors already exceed the cap.
            std::vector<int> ds;
            for (auto i : remaining) ds.push_back(degs[i]);
            std::sort(ds.begin(), ds.end());
            if (s > ds.size()) break;
            int sum = 0;
            for (std::size_t k = 0; k < s; ++k) sum += ds[k];
            if (sum > dmax) break;
        }
        if (s > remaining.size()) break;
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        bool restart = false;
        for (;;) {
            int dsum = 0;
            for (auto k : idx) dsum += degs[remaining[k]];
            const int fd = f.degree();
            if (dsum <= dmax && admissible.count(dsum) && dsum < fd) {
                BigInt lcf = f.lc();
                ZVec cand{lcf};
                zreduce(cand, P);
                if (cand.empty()) cand = ZVec{BigInt(0)};
                // Quick constant-term screen.
                BigInt c0 = lcf;
                for (auto k : idx) {
                    const ZVec& g = lifted[remaining[k]];
                    c0 = c0 * g[0];
                    mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), P.get_mpz_t());
                }
                c0 = symmetric_mod(c0, P);
                bool pass = true;
                if (sgn(f[0]) != 0) {
                    BigInt t = lcf * f[0];
                    if (sgn(c0) == 0 || !mpz_divisible_p(t.get_mpz_t(), c0.get_mpz_t())) pass = false;
                }
                if (pass) {
                    for (auto k : idx) cand = zmul(cand, lifted[remaining[k]], P);
                    ZPoly g = primitive_part(symmetric_poly(cand, P));
                    ZPoly q;
                    if (g.degree() == dsum && try_divexact(f, g, q)) {
                        res.factors.push_back(g);
                        f = primitive_part(q);
                        std::vector<std::size_t> keep;
                        for (std::size_t k = 0, j = 0; k < remaining.size(); ++k) {
                            if (j < idx.size() && idx[j] == k) {
                                ++j;
                                continue;
                            }
                            keep.push_back(remaining[k]);
                        }
                        remaining = std::move(keep);
                        restart = true;
                        break;
                    }
                }
            }
            // next combination
            std::size_t m = remaining.size();
            int i = static_cast<int>(s) - 1;
            while (i >= 0 && idx[i] == m - s + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (std::size_t k = i + 1; k < s; ++k) idx[k] = idx[k - 1] + 1;
        }
        if (restart) {
            --s;  // retry the same cardinality on the smaller set
            if (remaining.size() < 2 && full) break;
            continue;
        }
    }
    if (full) {
        if (f.degree() > 0) res.factors.push_back(f);
        res.cofactor = ZPoly(BigInt(1));
    } else if (f.degree() > 0 && f.degree() <= dmax) {
        // every proper factor would have been found above
        res.factors.push_back(f);
        res.cofactor = ZPoly(BigInt(1));
    } else {
        res.cofactor = f;
    }
    std::sort(res.factors.begin(), res.factors.end(), poly_less);
    return res;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_Z(const ZPoly& f) { return zassenhaus(f, -1).factors; }

SmallFactors small_factors_Z(const ZPoly& f, int max_degree) {
    if (max_degree < 0) max_degree = 0;
    return zassenhaus(f, max_degree);
}

std::set<int> possible_factor_degrees(const ZPoly& f0, int primes) {
    ZPoly f = primitive_part(f0);
    std::set<int> adm;
    if (f.degree() <= 0) return adm;
    choose_prime(f, primes, adm);
    return adm;
}

std::vector<std::pair<UniPoly, int>> factor_over_Q(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("factor_over_Q of zero");
    std::vector<std::pair<ZPoly, int>> zf;
    ZPoly f = clear_denominators(p);
    // Pull out powers of x first: cheap and keeps the modular step clean.
    int xpow = 0;
    while (f.degree() > 0 && sgn(f[0]) == 0) {
        std::vector<BigInt> v(f.coeffs().begin() + 1, f.coeffs().end());
        f = ZPoly(std::move(v));
        ++xpow;
    }
    if (xpow > 0) zf.emplace_back(ZPoly(std::vector<BigInt>{BigInt(0), BigInt(1)}), xpow);
    for (auto& [g, mult] : squarefree_Z(f))
        for (auto& h : factor_squarefree_Z(g)) zf.emplace_back(h, mult);
    std::sort(zf.begin(), zf.end(), [](const auto& a, const auto& b) {
        if (poly_less(a.first, b.first)) return true;
        if (poly_less(b.first, a.first)) return false;
        return a.second < b.second;
    });
    std::vector<std::pair<UniPoly, int>> out;
    for (auto& [g, m] : zf) out.emplace_back(to_rational(g), m);
    return out;
}

}  // namespace cmt
