#include "cmtorsion/kubert/torsion.hpp"

#include <numeric>

namespace cmt {

std::string shape_string(long N, long n) {
    if (N == 1) return "0";
    if (n == 1) return "Z/" + std::to_string(N);
    return "Z/" + std::to_string(n) + " x Z/" + std::to_string(N);
}

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

long torsion_bound(const Weierstrass<FieldElement>& E, const NumberField& K, const TorsionOptions& opt) {
    long B = 0;
    int used = 0;
    for (std::uint64_t p = 5; p <= opt.prime_ceiling && used < opt.max_primes; ++p) {
        if (!is_prime(p)) continue;
        auto primes = primes_above(K, p, opt.prime_ceiling);
        bool good = false;
        for (auto& P : primes) {
            auto Ep = reduce_curve(E, P);
            if (!Ep) continue;
            B = std::gcd(B, static_cast<long>(count_points(*Ep)));
            good = true;
        }
        if (good) ++used;
    }
    if (used < opt.min_primes)
        throw std::runtime_error("too few primes of good reduction below norm " + std::to_string(opt.prime_ceiling));
    return B;
}

TorsionGroup torsion_subgroup(const Weierstrass<FieldElement>& E, const NumberField& K, const TorsionOptions& opt) {
    if (E.is_singular()) throw std::domain_error("singular curve");
    auto lift = [&](const FieldElement& a) { return a.has_field() ? a : K.element(a.to_rational()); };
    Weierstrass<FieldElement> EK = E.map<FieldElement>(lift);
    long B = torsion_bound(EK, K, opt);
    return torsion_from_bound(EK, B, [&](const KPoly& p) { return roots_in_K(p, K); });
}

TorsionGroupT<Fq> finite_group(const Weierstrass<Fq>& E) {
    std::shared_ptr<const FqContext> ctx;
    for (const Fq* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        if (a->ctx()) ctx = a->ctx();
    if (!ctx) throw std::invalid_argument("curve has no finite field context");
    auto roots = [&](const Poly<Fq>& p) {
        std::vector<Fq> out;
        for (std::uint64_t i = 0; i < ctx->q; ++i) {
            Fq x = Fq::from_index(ctx, i);
            if (evaluate(p, x).is_zero()) out.push_back(x);
        }
        return out;
    };
    return torsion_from_bound(E, static_cast<long>(count_points(E)), roots);
}

}  // namespace cmt
