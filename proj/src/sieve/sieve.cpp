#include "cmtorsion/sieve/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cmtorsion/arith/factor.hpp"
#include "cmtorsion/kubert/kubert.hpp"

namespace cmt {

std::string to_string(const GroupShape& g) {
    if (g.N == 1) return "0";
    if (g.n == 1) return "Z/" + std::to_string(g.N);
    return "Z/" + std::to_string(g.n) + " x Z/" + std::to_string(g.N);
}

GroupShape parse_shape(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    auto bad = [&] { return std::invalid_argument("bad group shape: " + s); };
    if (t == "0") return {1, 1};
    auto read = [&](std::size_t& pos) {
        if (t.compare(pos, 2, "Z/") != 0) throw bad();
        pos += 2;
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t.substr(pos), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (v < 1) throw bad();
        pos += used;
        return v;
    };
    std::size_t pos = 0;
    long first = read(pos);
    if (pos == t.size()) return {first, 1};
    if (t[pos] != 'x') throw bad();
    ++pos;
    long second = read(pos);
    if (pos != t.size() || second % first) throw bad();
    if (first == 1) return {second, 1};
    return {second, first};
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

std::atomic<SieveCache*> g_cache{nullptr};
std::mutex memo_mutex;
std::map<std::pair<std::string, int>, KPoly> resultant_memo;
std::map<std::pair<std::string, int>, std::vector<std::pair<KPoly, int>>> factor_memo;
std::map<long, ZPoly> class_poly_memo;

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool squarefree(long m) {
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

bool is_real_fundamental(long D) {
    if (D <= 1) return false;
    if (D % 4 == 1) return squarefree(D);
    if (D % 4 != 0) return false;
    const long m = D / 4;
    return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
}

using KB = Poly<KPoly>;  // polynomials in c over K[b]

KB lift(const ZBiPoly& p, const NumberField& K) {
    Poly<ZPoly> pc = to_poly_in_c(p);
    std::vector<KPoly> v;
    v.reserve(pc.size());
    for (const ZPoly& z : pc.coeffs()) v.push_back(to_kpoly(to_rational(z), K));
    return KB(std::move(v));
}

// a mod m for m monic in c; only ring operations on the coefficients.
template <class R>
Poly<R> reduce_monic(const Poly<R>& a, const Poly<R>& m) {
    const int dm = m.degree();
    std::vector<R> r = a.coeffs();
    for (int k = static_cast<int>(r.size()) - 1; k >= dm; --k) {
        if (is_zero(r[k])) continue;
        R t = r[k];
        for (int i = 0; i <= dm; ++i) r[k - dm + i] = r[k - dm + i] - t * m[i];
    }
    r.resize(std::min<std::size_t>(r.size(), static_cast<std::size_t>(dm)));
    return Poly<R>(std::move(r));
}

bool is_one(const ZPoly& a) { return a.degree() == 0 && a[0] == 1; }
bool is_one(const KPoly& a) { return a.degree() == 0 && a[0] == FieldElement(1); }

template <class R>
R eliminate_c(const Poly<R>& A, const Poly<R>& phi) {
    if (is_one(A.lc())) return resultant(A, reduce_monic(phi, A));
    return resultant(A, phi);
}

[[noreturn]] void degenerate(int N) {
    throw std::runtime_error("degenerate elimination for N = " + std::to_string(N));
}

KPoly compute_resultant(const JField& J, int N) {
    const ZBiPoly& phi = compute_phiN(N);
    if (J.K.is_rational()) {
        Rational j0 = J.j.to_rational();
        Poly<ZPoly> A;
        if (j0 == Rational(0)) {
            A = to_poly_in_c(base_quartic());
        } else {
            BigInt num = j0.get_num(), den = j0.get_den();
            A = to_poly_in_c(ZBiPoly(den) * j_numerator() - ZBiPoly(num) * j_denominator());
        }
        ZPoly R = eliminate_c(A, to_poly_in_c(phi));
        if (R.is_zero()) degenerate(N);
        R = primitive_part(R);
        if (R.lc() < 0) R = -R;
        return to_kpoly(to_rational(R), J.K);
    }
    KB A = lift(j_numerator(), J.K) - KB(KPoly(J.j)) * lift(j_denominator(), J.K);
    KPoly R = eliminate_c(A, lift(phi, J.K));
    if (R.is_zero()) degenerate(N);
    return make_monic_k(R);
}

std::string key_of(const JField& J) { return J.key(); }

}  // namespace

void install_sieve_cache(SieveCache* cache) { g_cache.store(cache); }

std::string JField::key() const {
    if (order.D != 0) return "D" + std::to_string(order.D);
    std::ostringstream os;
    os << "j" << to_string(j) << "@" << to_string(K.poly());
    return os.str();
}

JField make_jfield(const QuadOrder& O, const ClassPolyOptions& opt) {
    ZPoly H;
    bool have = false;
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = class_poly_memo.find(O.D);
        if (it != class_poly_memo.end()) {
            H = it->second;
            have = true;
        }
    }
    SieveCache* cache = g_cache.load();
    if (!have && cache) {
        if (auto h = cache->load_class_poly(O.D)) {
            H = *h;
            have = true;
        }
    }
    if (!have) {
        ClassPolynomial cp = class_polynomial(O, opt);
        H = cp.poly;
        if (cache) cache->save_class_poly(O.D, H, cp.precision);
    }
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        class_poly_memo.emplace(O.D, H);
    }
    JField J;
    J.order = O;
    if (H.degree() == 1) {
        J.K = NumberField::rationals();
        J.j = J.K.element(Rational(-H[0]));
    } else {
        // class polynomials are irreducible
        J.K = NumberField(to_rational(H), "Q(j)", false);
        J.j = J.K.gen();
    }
    return J;
}

JField make_jfield(const Rational& j0) {
    JField J;
    J.K = NumberField::rationals();
    J.j = J.K.element(j0);
    return J;
}

std::vector<long> possible_exponents(const QuadOrder& O, int deg) {
    if (deg < 1) throw std::invalid_argument("degree must be positive");
    const long bound = static_cast<long>(O.w) * deg;
    // phi(N) >= sqrt(N / 2)
    const long nmax = 2 * bound * bound + 2;
    std::vector<long> out;
    for (long N = 1; N <= nmax; ++N) {
        if (euler_phi(N) > bound) continue;
        bool ok = true;
        for (long p = 3; p <= N && ok; p += 2) {
            if (N % p || !is_prime(p) || O.D % p == 0) continue;
            ok = prime_allowed(O, p, static_cast<long>(O.h) * deg);
        }
        if (ok) out.push_back(N);
    }
    return out;
}

int cyclotomic_intersection_degree(const JField& J, long n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (J.K.is_rational()) return 1;
    int count = 1;
    for (long delta = 5; delta <= n; ++delta) {
        if (n % delta) continue;
        if (!is_real_fundamental(delta)) continue;
        if (is_square_in_K(Rational(delta), J.K)) ++count;
    }
    return count;
}

std::vector<GroupShape> possible_groups(int d, const JField& J, const std::vector<long>& exponents,
                                        const PossibleGroupsOptions& opt) {
    const QuadOrder& O = J.order;
    const int h = O.h > 0 ? O.h : J.h();
    if (d < 1 || d % h) throw std::invalid_argument("class number must divide the degree");
    const int deg = d / h;
    const long w = O.w;
    std::vector<GroupShape> out;
    for (long N : exponents) {
        for (long n = 1; n <= N; ++n) {
            if (N % n) continue;
            const long pn = euler_phi(N * n);
            bool keep = true;
            if (deg == 1) {
                keep = (n == 2 && N == 2) || (n == 1 && (N == 1 || N == 2 || N == 3 || N == 4 || N == 6));
            } else if (deg == 2) {
                if (opt.recompute_extra_unit_quadratic && w > 2)
                    keep = pn <= w * deg && d % euler_phi(n) == 0;
                else
                    keep = (O.D == -3 && N == 3 && n == 3) || pn <= 4;
            } else if (deg % 2 == 1) {
                keep = pn <= w * deg && d % euler_phi(n) == 0;
            } else {
                keep = (static_cast<long>(deg) * cyclotomic_intersection_degree(J, n)) % euler_phi(n) == 0;
            }
            if (keep) out.push_back({N, n});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

KPoly kubert_resultant(const JField& J, int N) {
    if (N < 4) throw std::invalid_argument("resultant needs N >= 4");
    const auto key = std::make_pair(key_of(J), N);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = resultant_memo.find(key);
        if (it != resultant_memo.end()) return it->second;
    }
    SieveCache* cache = g_cache.load();
    KPoly R;
    bool have = false;
    if (cache) {
        if (auto r = cache->load_resultant(J, N)) {
            std::vector<FieldElement> v;
            for (const FieldElement& a : r->coeffs()) v.push_back(a.has_field() ? a : J.K.element(a.to_rational()));
            R = KPoly(std::move(v));
            have = true;
        }
    }
    if (!have) {
        R = compute_resultant(J, N);
        if (cache) cache->save_resultant(J, N, R);
    }
    std::lock_guard<std::mutex> lock(memo_mutex);
    return resultant_memo.emplace(key, std::move(R)).first->second;
}

const std::vector<std::pair<KPoly, int>>& kubert_factors(const JField& J, int N) {
    const auto key = std::make_pair(key_of(J), N);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = factor_memo.find(key);
        if (it != factor_memo.end()) return it->second;
    }
    SieveCache* cache = g_cache.load();
    std::vector<std::pair<KPoly, int>> f;
    bool have = false;
    if (cache) {
        if (auto r = cache->load_factors(J, N)) {
            f = std::move(*r);
            have = true;
        }
    }
    if (!have) {
        KPoly R = kubert_resultant(J, N);
        if (J.K.is_rational()) {
            for (auto& [g, e] : factor_over_Q(to_unipoly(R))) f.emplace_back(to_kpoly(g, J.K), e);
        } else {
            f = factor_over_K(R, J.K);
        }
        if (cache) cache->save_factors(J, N, f);
    }
    std::lock_guard<std::mutex> lock(memo_mutex);
    return factor_memo.emplace(key, std::move(f)).first->second;
}

std::vector<int> degree_sequence(const JField& J, int N) {
    std::vector<int> out;
    for (auto& fe : kubert_factors(J, N)) out.push_back(fe.first.degree() * J.h());
    std::sort(out.begin(), out.end());
    return out;
}

bool has_factor_degree_dividing(const JField& J, int N, int deg) {
    const auto key = std::make_pair(key_of(J), N);
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = factor_memo.find(key);
        if (it != factor_memo.end()) {
            for (auto& fe : it->second)
                if (deg % fe.first.degree() == 0) return true;
            return false;
        }
    }
    for (const KPoly& f : small_factors_over_K(kubert_resultant(J, N), J.K, deg))
        if (deg % f.degree() == 0) return true;
    return false;
}

std::vector<long> sieved_torsion(const JField& J, int deg) {
    if (J.order.D == 0) throw std::invalid_argument("sieve needs a CM order");
    SieveCache* cache = g_cache.load();
    if (cache)
        if (auto r = cache->load_sieved(J, deg)) return *r;
    std::vector<long> L = possible_exponents(J.order, deg);
    for (std::size_t i = 0; i < L.size(); ++i) {
        const long N = L[i];
        if (N < 4) continue;
        if (has_factor_degree_dividing(J, static_cast<int>(N), deg)) continue;
        std::erase_if(L, [N](long M) { return M % N == 0; });
        --i;
    }
    if (cache) cache->save_sieved(J, deg, L);
    return L;
}

}  // namespace cmt
