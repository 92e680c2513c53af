#include "cmtorsion/kubert/kubert.hpp"

#include <map>
#include <mutex>

#include "cmtorsion/arith/fp.hpp"

namespace cmt {

namespace {

ZBiPoly zb() { return ZBiPoly::b(); }
ZBiPoly zc() { return ZBiPoly::c(); }
ZBiPoly zconst(long a) { return ZBiPoly(BigInt(a)); }

// Exact division by b: every term must contain b.
ZBiPoly divide_by_b(const ZBiPoly& p) {
    std::vector<ZBiPoly::Term> terms;
    terms.reserve(p.size());
    for (auto& t : p.terms()) {
        if (ZBiPoly::bexp(t.first) == 0) throw std::logic_error("division value not divisible by b");
        terms.emplace_back(t.first - ZBiPoly::key(1, 0), t.second);
    }
    return ZBiPoly::from_terms(std::move(terms));
}

std::mutex memo_mutex;

constexpr std::uint64_t kValuationPrime = 1000000007ULL;

// F_p[b] as a ring for the division value recurrence.
struct FpB {
    fp::Vec v;
    FpB() = default;
    FpB(int a) {  // NOLINT
        if (a) v = fp::Vec{static_cast<std::uint64_t>(a)};
    }
    explicit FpB(fp::Vec x) : v(std::move(x)) {}
    friend FpB operator*(const FpB& x, const FpB& y) { return FpB(fp::mul(x.v, y.v, kValuationPrime)); }
    friend FpB operator-(const FpB& x, const FpB& y) { return FpB(fp::sub(x.v, y.v, kValuationPrime)); }
};

}  // namespace

const ZBiPoly& base_quartic() {
    static const ZBiPoly g = [] {
        ZBiPoly b = zb(), c = zc(), one = zconst(1);
        ZBiPoly u = one - c;
        return zconst(16) * b * b + zconst(8) * b * u * (c + zconst(2)) + u * u * u * u;
    }();
    return g;
}

const ZBiPoly& j_numerator() {
    static const ZBiPoly n = pow(base_quartic(), 3);
    return n;
}

const ZBiPoly& j_denominator() {
    static const ZBiPoly d = [] {
        ZBiPoly b = zb(), c = zc(), one = zconst(1);
        ZBiPoly u = one - c;
        return b * b * b * (zconst(16) * b * b - b * (zconst(8) * c * c + zconst(20) * c - one) - c * u * u * u);
    }();
    return d;
}

std::vector<ZBiPoly> kubert_division_values(int n) {
    static std::vector<ZBiPoly> cache;
    std::lock_guard<std::mutex> lock(memo_mutex);
    if (static_cast<int>(cache.size()) <= n) {
        // At (0,0): psi_2 = a3, psi_3 = b8, psi_4 = psi_2 (b4 b8 - b6^2).
        ZBiPoly b = zb(), c = zc();
        ZBiPoly a1 = zconst(1) - c, a3 = -b, a2 = -b;
        ZBiPoly b4 = a1 * a3, b6 = a3 * a3, b8 = a2 * a3 * a3;
        ZBiPoly psi2 = a3, psi3 = b8, psi4 = psi2 * (b4 * b8 - b6 * b6);
        cache = division_values(psi2, psi3, psi4, std::max(n, 4),
                                [](const ZBiPoly& a) { return -divide_by_b(a); });
    }
    return std::vector<ZBiPoly>(cache.begin(), cache.begin() + n + 1);
}

RationalFunction kubert_multiple_x(int m) {
    if (m < 1) throw std::invalid_argument("multiple must be positive");
    if (m == 1) return RationalFunction(0);
    auto psi = kubert_division_values(m + 1);
    ZBiPoly num = -(psi[m - 1] * psi[m + 1]);
    ZBiPoly den = psi[m] * psi[m];
    return RationalFunction(to_rational(num), to_rational(den));
}

const ZBiPoly& compute_fN(int N) {
    if (N < 3) throw std::invalid_argument("f_N needs N >= 3");
    static std::map<int, ZBiPoly> memo;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(N);
        if (it != memo.end()) return it->second;
    }
    const int m1 = (N + 1) / 2 - 1, m2 = N / 2 + 1;
    RationalFunction x1 = kubert_multiple_x(m1), x2 = kubert_multiple_x(m2);
    BiPoly f = x1.num() * x2.den() - x2.num() * x1.den();
    ZBiPoly r = primitive_normal(f);
    std::lock_guard<std::mutex> lock(memo_mutex);
    return memo.emplace(N, std::move(r)).first->second;
}

const ZBiPoly& compute_phiN(int N) {
    if (N < 3) throw std::invalid_argument("phi_N needs N >= 3");
    static std::map<int, ZBiPoly> memo;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(N);
        if (it != memo.end()) return it->second;
    }
    ZBiPoly r;
    if (N == 3) {
        r = zb();
    } else {
        ZBiPoly q = compute_fN(N);
        for (int d = 3; d < N; ++d) {
            if (N % d) continue;
            ZBiPoly t;
            if (!try_divexact(q, compute_phiN(d), t))
                throw std::logic_error("phi_" + std::to_string(d) + " does not divide f_" + std::to_string(N));
            q = std::move(t);
        }
        r = primitive_normal(q);
    }
    std::lock_guard<std::mutex> lock(memo_mutex);
    return memo.emplace(N, std::move(r)).first->second;
}

int kubert_b_valuation(int N) {
    if (N < 2) return 0;
    // psi_N(b, c0) over F_p bounds the valuation from above; the minimum
    // over a few specializations is the generic value.
    int best = -1;
    const std::uint64_t p = kValuationPrime;
    for (std::uint64_t c0 : {2ULL, 3ULL, 7ULL}) {
        using fp::Vec;
        auto mul = [&](const Vec& a, const Vec& b) { return fp::mul(a, b, p); };
        Vec a1{(1 + p - c0) % p}, a3{0, p - 1}, a2 = a3;
        Vec b4 = mul(a1, a3), b6 = mul(a3, a3), b8 = mul(a2, mul(a3, a3));
        Vec psi2 = a3, psi3 = b8, psi4 = mul(psi2, fp::sub(mul(b4, b8), mul(b6, b6), p));
        auto vals = division_values(FpB(psi2), FpB(psi3), FpB(psi4), std::max(N, 4), [&](const FpB& a) {
            Vec q(a.v.begin() + (a.v.empty() ? 0 : 1), a.v.end());
            return FpB(fp::scale(q, p - 1, p));
        });
        const Vec& v = vals[N].v;
        int e = 0;
        while (e < static_cast<int>(v.size()) && v[e] == 0) ++e;
        if (best < 0 || e < best) best = e;
    }
    return best;
}

}  // namespace cmt
