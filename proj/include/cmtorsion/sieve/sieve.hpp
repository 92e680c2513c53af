#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmtorsion/numberfield/numberfield.hpp"
#include "cmtorsion/quadorders/quadorders.hpp"

namespace cmt {

// Z/N + Z/n with n | N.
struct GroupShape {
    long N = 1;
    long n = 1;
    long order() const { return N * n; }
    friend bool operator==(const GroupShape& a, const GroupShape& b) { return a.N == b.N && a.n == b.n; }
    // cyclic groups first, each family by exponent
    friend bool operator<(const GroupShape& a, const GroupShape& b) {
        return a.n != b.n ? a.n < b.n : a.N < b.N;
    }
};
std::string to_string(const GroupShape& g);
// Accepts "0", "Z/N" and "Z/n x Z/N".
GroupShape parse_shape(const std::string& s);

long euler_phi(long n);

// Q(j(O)) with j as an element. For an explicit rational j0 the order is
// left unset (D = 0) and the field is Q.
struct JField {
    QuadOrder order;
    NumberField K;
    FieldElement j;
    int h() const { return K.degree(); }
    std::string key() const;
};
JField make_jfield(const QuadOrder& O, const ClassPolyOptions& opt = {});
JField make_jfield(const Rational& j0);

// Persistent storage for expensive sieve objects; installed by the engine.
class SieveCache {
public:
    virtual ~SieveCache() = default;
    virtual std::optional<ZPoly> load_class_poly(long D) = 0;
    virtual void save_class_poly(long D, const ZPoly& H, long precision) = 0;
    virtual std::optional<KPoly> load_resultant(const JField& J, int N) = 0;
    virtual void save_resultant(const JField& J, int N, const KPoly& R) = 0;
    virtual std::optional<std::vector<std::pair<KPoly, int>>> load_factors(const JField& J, int N) = 0;
    virtual void save_factors(const JField& J, int N, const std::vector<std::pair<KPoly, int>>& f) = 0;
    virtual std::optional<std::vector<long>> load_sieved(const JField& J, int deg) = 0;
    virtual void save_sieved(const JField& J, int deg, const std::vector<long>& L) = 0;
};
// nullptr uninstalls. The cache must outlive its installation.
void install_sieve_cache(SieveCache* cache);

// {N : phi(N) <= w deg} restricted to N whose odd prime divisors p with
// p not dividing D pass the Legendre-symbol test at d = h deg.
std::vector<long> possible_exponents(const QuadOrder& O, int deg);

// 1 + the number of real quadratic subfields of Q(j) whose discriminant
// divides n.
int cyclotomic_intersection_degree(const JField& J, long n);

struct PossibleGroupsOptions {
    // For the orders with extra units (j = 0, 1728) at deg = 2, replace the
    // phi(Nn) <= 4 cut by the Weil pairing condition phi(n) | d, so that
    // these cases are computed rather than taken from the seed list.
    bool recompute_extra_unit_quadratic = false;
};
// Candidate shapes Z/N + Z/n for the exponents given; throws
// std::invalid_argument unless h(O) | d.
std::vector<GroupShape> possible_groups(int d, const JField& J, const std::vector<long>& exponents,
                                        const PossibleGroupsOptions& opt = {});

// Res_c(n_j - j d_j, phi_N) in K[b], K = Q(j): integer-primitive with
// positive leading coefficient when K = Q, monic otherwise. For j = 0 the
// eliminant is the cube root of n_j. Memoized; throws std::runtime_error on
// an identically zero resultant.
KPoly kubert_resultant(const JField& J, int N);
// Irreducible factorization over K with multiplicities; memoized.
const std::vector<std::pair<KPoly, int>>& kubert_factors(const JField& J, int N);
// Degree(f) h over distinct irreducible factors f, ascending.
std::vector<int> degree_sequence(const JField& J, int N);
// Whether some irreducible factor has degree dividing deg; only factors of
// degree <= deg are computed.
bool has_factor_degree_dividing(const JField& J, int N, int deg);

// possible_exponents with multiples of N removed whenever no factor of the
// Kubert resultant has degree dividing deg.
std::vector<long> sieved_torsion(const JField& J, int deg);

}  // namespace cmt
