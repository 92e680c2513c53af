#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmtorsion/engine/witness.hpp"
#include "cmtorsion/sieve/sieve.hpp"

namespace cmt {

// Raised when the intersection of the j-curve and Y1(N) above b does not
// determine c over the field of b.
class CRecoveryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Field generated over Q(j) by a root b of an irreducible factor of the
// Kubert resultant.
struct ResultantField {
    NumberField F;
    FieldElement b;
    FieldElement j;  // image of j(O)
};
ResultantField resultant_field(const JField& J, const KPoly& factor);

// The c with E(b, c) on both the j-curve and Y1(N); throws CRecoveryError
// unless the gcd over F of the two specializations is linear in c. The
// point (0,0) is checked to have exact order N.
FieldElement recover_c(const JField& J, int N, const ResultantField& R);

struct RuledOutOptions {
    TorsionOptions torsion;
    bool strict = false;  // rethrow c-recovery errors instead of skipping the branch
};

struct RuledOutResult {
    bool ruled_out = true;
    std::optional<Witness> witness;
    std::vector<std::string> warnings;  // skipped branches
};

// Decides whether G fails to be the torsion subgroup of every curve with CM
// by J.order over number fields of degree dividing d. Groups of exponent at
// least 4 go through the Kubert resultant; Z/3 + Z/3 through the Hesse pencil.
RuledOutResult ruled_out(const GroupShape& G, int d, const JField& J, const RuledOutOptions& opt = {});

// y^2 = x^3 - 27 mu (mu^3 + 8) x + 54 (mu^6 - 20 mu^3 - 8), isomorphic over
// Q(mu) to the Hesse cubic X^3 + Y^3 + Z^3 = 3 mu XYZ.
Weierstrass<FieldElement> hesse_curve(const FieldElement& mu);
// 27 mu^3 (mu^3 + 8)^3 - j (mu^3 - 1)^3 over Q(j).
KPoly hesse_j_polynomial(const JField& J);

}  // namespace cmt
