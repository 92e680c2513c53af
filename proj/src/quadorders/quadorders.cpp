#include "cmtorsion/quadorders/quadorders.hpp"

#include <mpfr.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "bounds_data.hpp"

namespace cmt {

namespace {

bool squarefree(long n) {
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
        if (n % p == 0) n /= p;
    }
    return true;
}

long mod4(long D) { return ((D % 4) + 4) % 4; }

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

// Kronecker symbol (D0 / p) for a prime p.
int kronecker_prime(long D0, long p) {
    if (p == 2) {
        if (D0 % 2 == 0) return 0;
        long r = ((D0 % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return legendre(BigInt(D0), p);
}

}  // namespace

bool is_discriminant(long D) { return D < 0 && (mod4(D) == 0 || mod4(D) == 1); }

bool is_fundamental(long D) {
    if (!is_discriminant(D)) return false;
    if (mod4(D) == 1) return squarefree(D);
    long m = D / 4;
    long r = mod4(m);
    return (r == 2 || r == 3) && squarefree(m);
}

std::vector<ReducedForm> reduced_forms(long D) {
    if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
    std::vector<ReducedForm> out;
    const long N = -D;
    for (long a = 1; 3 * a * a <= N; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue;
            long num = b * b - D;
            if (num % (4 * a)) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

int class_number(long D) { return static_cast<int>(reduced_forms(D).size()); }

int unit_count(long D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

QuadOrder make_order(long D) {
    if (!is_discriminant(D)) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
    QuadOrder o;
    o.D = D;
    for (long f = static_cast<long>(std::sqrt(static_cast<double>(-D))) + 1; f >= 1; --f) {
        if (D % (f * f)) continue;
        if (is_fundamental(D / (f * f))) {
            o.f = f;
            o.D0 = D / (f * f);
            break;
        }
    }
    o.h = class_number(D);
    o.w = unit_count(D);
    return o;
}

int legendre(const BigInt& a, long p) {
    BigInt r = a % BigInt(p);
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), BigInt(p).get_mpz_t());
}

bool prime_allowed(const QuadOrder& order, long p, long d) {
    if (order.D % p == 0) return true;
    const QuadOrder K = order.f == 1 ? order : make_order(order.D0);
    const long rhs = 2 * d * K.w;
    const int s = legendre(BigInt(order.D), p);
    if (s == 1) return rhs % ((p - 1) * K.h) == 0;
    return rhs % ((p * p - 1) * K.h) == 0;
}

BoundTable parse_bound_table(const std::string& text) {
    BoundTable t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int h;
        long bound;
        if (ls >> h >> bound) t[h] = bound;
    }
    return t;
}

const BoundTable& default_bound_table() {
    static const BoundTable table = parse_bound_table(kClassNumberBounds);
    return table;
}

std::vector<QuadOrder> enumerate_orders(const std::set<int>& h_allowed, const BoundTable& table, long ceiling_scale) {
    std::vector<QuadOrder> out;
    if (h_allowed.empty()) return out;
    long max_abs = 0;
    int max_h = 0;
    for (int h : h_allowed) {
        max_h = std::max(max_h, h);
        // the field class number divides h, so every divisor needs a bound
        for (int e = 1; e <= h; ++e) {
            if (h % e) continue;
            auto it = table.find(e);
            if (it == table.end()) throw BoundUnavailable("bound unavailable for class number " + std::to_string(e));
            max_abs = std::max(max_abs, it->second);
        }
    }
    max_abs *= ceiling_scale;
    for (long N = 3; N <= max_abs; ++N) {
        const long D0 = -N;
        if (!is_fundamental(D0)) continue;
        const int h0 = class_number(D0);
        bool useful = false;
        for (int h : h_allowed) useful = useful || h % h0 == 0;
        if (!useful) continue;
        const int w0 = unit_count(D0);
        // h(f^2 D0) = h0 f prod(1 - (D0/p)/p) / [O_K^* : O^*] and phi(f) <= 3 h(f^2 D0)
        for (long f = 1; euler_phi(f) <= 3L * max_h; ++f) {
            long num = h0 * f;
            long den = f == 1 ? 1 : w0 / 2;
            long m = f;
            for (long p = 2; m > 1; ++p) {
                if (m % p) continue;
                while (m % p == 0) m /= p;
                num = num / p * (p - kronecker_prime(D0, p));
            }
            if (num % den) throw std::logic_error("class number formula is not integral");
            const int h = static_cast<int>(num / den);
            if (!h_allowed.count(h)) continue;
            QuadOrder o;
            o.D = D0 * f * f;
            o.f = f;
            o.D0 = D0;
            o.h = h;
            o.w = unit_count(o.D);
            out.push_back(o);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_string(const QuadOrder& o) {
    std::ostringstream os;
    os << "D=" << o.D << " (f=" << o.f << ", D0=" << o.D0 << ", h=" << o.h << ", w=" << o.w << ")";
    return os.str();
}

namespace {

// Minimal RAII wrapper around mpfr_t at a fixed working precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Real() { mpfr_clear(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

private:
    mpfr_t v_;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t p) : re(p), im(p) {}
};

Complex mul(const Complex& a, const Complex& b) {
    mpfr_prec_t p = a.re.prec();
    Complex r(p);
    Real t(p);
    mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
    return r;
}

Complex add(const Complex& a, const Complex& b) {
    Complex r(a.re.prec());
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

Complex sub(const Complex& a, const Complex& b) {
    Complex r(a.re.prec());
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

Complex divide(const Complex& a, const Complex& b) {
    mpfr_prec_t p = a.re.prec();
    Real n(p), t(p);
    mpfr_sqr(n.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    Complex conj(p);
    mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
    Complex r = mul(a, conj);
    mpfr_div(r.re.get(), r.re.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), n.get(), MPFR_RNDN);
    return r;
}

Complex one(mpfr_prec_t p) {
    Complex r(p);
    mpfr_set_ui(r.re.get(), 1, MPFR_RNDN);
    return r;
}

// j(tau) for tau = (-b + sqrt(D)) / (2a), from j = E4^3 / Delta with
// Delta = q prod(1 - q^n)^24 and prod(1 - q^n) by the pentagonal series.
Complex j_value(long D, long a, long b, mpfr_prec_t prec) {
    Real pi(prec), x(prec), r(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    // q = exp(2 pi i tau) = exp(-pi sqrt|D| / a) * exp(-pi i b / a)
    mpfr_set_si(r.get(), -D, MPFR_RNDN);
    mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), pi.get(), MPFR_RNDN);
    mpfr_div_si(r.get(), r.get(), a, MPFR_RNDN);
    mpfr_neg(r.get(), r.get(), MPFR_RNDN);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    mpfr_mul_si(x.get(), pi.get(), -b, MPFR_RNDN);
    mpfr_div_si(x.get(), x.get(), a, MPFR_RNDN);
    Complex q(prec);
    mpfr_sin_cos(q.im.get(), q.re.get(), x.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), q.re.get(), r.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), r.get(), MPFR_RNDN);

    // |q|^n below 2^-prec terminates both series
    Real bits(prec);
    mpfr_log2(bits.get(), r.get(), MPFR_RNDN);
    const double per_term = -mpfr_get_d(bits.get(), MPFR_RNDN);
    const long terms = static_cast<long>(static_cast<double>(prec) / per_term) + 4;

    // E4 = 1 + 240 sum n^3 q^n / (1 - q^n)
    Complex e4 = one(prec), qn = q;
    for (long n = 1; n <= terms; ++n) {
        Complex term = divide(qn, sub(one(prec), qn));
        Complex c(prec);
        mpfr_mul_si(c.re.get(), term.re.get(), 240 * n * n * n, MPFR_RNDN);
        mpfr_mul_si(c.im.get(), term.im.get(), 240 * n * n * n, MPFR_RNDN);
        e4 = add(e4, c);
        qn = mul(qn, q);
    }
    // eta product: sum over k of (-1)^k q^(k(3k-1)/2), k in Z
    Complex eta = one(prec);
    auto qpow = [&](long e) {
        Complex res = one(prec), base = q;
        while (e) {
            if (e & 1) res = mul(res, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return res;
    };
    for (long k = 1;; ++k) {
        long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 > terms) break;
        Complex t = add(qpow(e1), qpow(e2));
        eta = (k & 1) ? sub(eta, t) : add(eta, t);
    }
    Complex eta24 = eta;
    for (int i = 0; i < 3; ++i) eta24 = mul(eta24, eta24);  // eta^8
    eta24 = mul(mul(eta24, eta24), eta24);                    // eta^24
    Complex delta = mul(q, eta24);
    Complex e43 = mul(mul(e4, e4), e4);
    return divide(e43, delta);
}

}  // namespace

ClassPolynomial class_polynomial(const QuadOrder& order, const ClassPolyOptions& opt) {
    auto forms = reduced_forms(order.D);
    // log10 of the largest coefficient is about sum pi sqrt|D| / (a ln 10)
    double size = 0;
    for (auto& f : forms) size += M_PI * std::sqrt(static_cast<double>(-order.D)) / (f.a * std::log(10.0));
    long digits = opt.start_digits > 0 ? opt.start_digits
                                       : 15L * static_cast<long>(forms.size()) + static_cast<long>(size) + 20;
    const std::size_t h = forms.size();
    for (; digits <= opt.precision_ceiling; digits *= 2) {
        const mpfr_prec_t prec = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
        std::vector<Complex> coeffs;
        coeffs.push_back(one(prec));
        for (auto& f : forms) {
            Complex j = j_value(order.D, f.a, f.b, prec);
            // multiply running product by (x - j)
            std::vector<Complex> next(coeffs.size() + 1, Complex(prec));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] = add(next[i + 1], coeffs[i]);
                next[i] = sub(next[i], mul(coeffs[i], j));
            }
            coeffs = std::move(next);
        }
        std::vector<BigInt> ints(h + 1);
        bool ok = true;
        Real diff(prec), rounded(prec);
        for (std::size_t i = 0; i <= h && ok; ++i) {
            mpfr_round(rounded.get(), coeffs[i].re.get());
            mpfr_sub(diff.get(), coeffs[i].re.get(), rounded.get(), MPFR_RNDN);
            mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
            if (mpfr_cmp_d(diff.get(), 0.25) >= 0) ok = false;
            mpfr_abs(diff.get(), coeffs[i].im.get(), MPFR_RNDN);
            if (mpfr_cmp_d(diff.get(), 0.25) >= 0) ok = false;
            mpfr_get_z(ints[i].get_mpz_t(), rounded.get(), MPFR_RNDN);
        }
        if (!ok) continue;
        ClassPolynomial cp;
        cp.order = order;
        cp.poly = ZPoly(std::move(ints));
        cp.precision = digits;
        return cp;
    }
    throw std::runtime_error("class polynomial precision ceiling exceeded for D=" + std::to_string(order.D));
}

}  // namespace cmt
