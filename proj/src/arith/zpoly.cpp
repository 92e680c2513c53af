#include "cmtorsion/arith/zpoly.hpp"

#include <mutex>
#include <stdexcept>

#include "cmtorsion/arith/fp.hpp"

namespace cmt {

BigInt content(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& c : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return a;
    BigInt g = content(a);
    if (sgn(a.lc()) < 0) g = -g;
    if (g == 1) return a;
    return divexact(a, g);
}

ZPoly clear_denominators(const UniPoly& a) {
    if (a.is_zero()) return ZPoly();
    BigInt den = 1;
    for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i].get_num() * (den / a[i].get_den());
    return primitive_part(ZPoly(std::move(v)));
}

UniPoly to_rational(const ZPoly& a) {
    std::vector<Rational> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = Rational(a[i]);
    return UniPoly(std::move(v));
}

ZPoly to_integer(const UniPoly& a) {
    std::vector<BigInt> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].get_den() != 1) throw std::domain_error("non-integral coefficient");
        v[i] = a[i].get_num();
    }
    return ZPoly(std::move(v));
}

UniPoly monic(const UniPoly& a) { return make_monic(a); }

namespace {

const std::vector<fp::u64>& gcd_primes() {
    static std::vector<fp::u64> primes;
    static std::once_flag once;
    std::call_once(once, [] {
        fp::u64 c = (1ULL << 62) - 1;
        while (primes.size() < 4096) {
            if (fp::is_prime(c)) primes.push_back(c);
            c -= 2;
        }
    });
    return primes;
}

}  // namespace

ZPoly gcd_Z(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return primitive_part(b) * ZPoly(content(b));
    if (b.is_zero()) return primitive_part(a) * ZPoly(content(a));
    BigInt cg = gcd(content(a), content(b));
    if (a.degree() == 0 || b.degree() == 0) return ZPoly(cg);
    ZPoly A = primitive_part(a), B = primitive_part(b);
    if (A.degree() < B.degree()) std::swap(A, B);
    BigInt gamma = gcd(A.lc(), B.lc());

    int best_deg = B.degree() + 1;
    std::vector<BigInt> acc;
    BigInt modulus = 0;
    ZPoly last;
    bool have_last = false;
    const auto& primes = gcd_primes();
    for (fp::u64 p : primes) {
        if (mod_ui(gamma, p) == 0) continue;
        if (mod_ui(A.lc(), p) == 0 || mod_ui(B.lc(), p) == 0) continue;
        fp::Vec g = fp::gcd(fp::from_poly(A, p), fp::from_poly(B, p), p);
        int dg = fp::deg(g);
        if (dg == 0) return ZPoly(cg);
        if (dg > best_deg) continue;
        g = fp::scale(g, fp::reduce(gamma, p), p);
        g.resize(dg + 1, 0);
        if (dg < best_deg) {
            best_deg = dg;
            acc.assign(dg + 1, BigInt(0));
            for (int i = 0; i <= dg; ++i) acc[i] = BigInt(static_cast<unsigned long>(g[i]));
            modulus = BigInt(static_cast<unsigned long>(p));
            have_last = false;
            continue;
        }
        // CRT: acc <- acc + modulus * ((g - acc) * modulus^-1 mod p)
        fp::u64 minv = fp::invmod(mod_ui(modulus, p), p);
        for (int i = 0; i <= dg; ++i) {
            fp::u64 cur = mod_ui(acc[i], p);
            fp::u64 t = fp::mulmod(fp::submod(g[i], cur, p), minv, p);
            acc[i] += modulus * BigInt(static_cast<unsigned long>(t));
        }
        modulus *= BigInt(static_cast<unsigned long>(p));
        std::vector<BigInt> sym(dg + 1);
        for (int i = 0; i <= dg; ++i) sym[i] = symmetric_mod(acc[i], modulus);
        ZPoly cand = primitive_part(ZPoly(std::move(sym)));
        if (have_last && cand == last) {
            ZPoly q;
            if (try_divexact(A, cand, q) && try_divexact(B, cand, q)) return ZPoly(cg) * cand;
        }
        last = cand;
        have_last = true;
    }
    throw std::runtime_error("modular gcd did not converge");
}

UniPoly gcd_Q(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() && b.is_zero()) return UniPoly();
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    ZPoly g = gcd_Z(clear_denominators(a), clear_denominators(b));
    return monic(to_rational(g));
}

std::vector<std::pair<ZPoly, int>> squarefree_Z(const ZPoly& f0) {
    std::vector<std::pair<ZPoly, int>> out;
    ZPoly f = primitive_part(f0);
    if (f.degree() <= 0) return out;
    ZPoly fd = derivative(f);
    ZPoly g = primitive_part(gcd_Z(f, fd));
    ZPoly c = divexact(f, g);
    ZPoly d = divexact(fd, g) - derivative(c);
    int i = 1;
    while (c.degree() > 0) {
        ZPoly a = primitive_part(gcd_Z(c, d));
        if (a.degree() > 0) out.emplace_back(a, i);
        c = divexact(c, a);
        d = divexact(d, a) - derivative(c);
        ++i;
    }
    return out;
}

ZPoly ipow(const ZPoly& a, unsigned e) { return pow(a, e); }

}  // namespace cmt
