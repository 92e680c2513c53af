#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmtorsion/kubert/curve.hpp"
#include "cmtorsion/kubert/torsion.hpp"
#include "cmtorsion/numberfield/numberfield.hpp"
#include "cmtorsion/sieve/sieve.hpp"

#include <json.hpp>

namespace cmt {

// A curve over a number field together with the torsion group it realizes.
// Field elements are stored as power-basis coordinates so that the record
// can be checked without any other state.
struct Witness {
    GroupShape group;
    long D = 0;  // discriminant of the CM order
    UniPoly field_poly;
    std::vector<std::vector<Rational>> a;  // a1, a2, a3, a4, a6
    std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> bc;  // E(b, c) parameters
    std::string source;  // "table", "kubert" or "hesse"
    bool verified = false;

    int field_degree() const { return std::max(1, field_poly.degree()); }
    NumberField field() const;
    Weierstrass<FieldElement> curve() const;
};

Witness make_witness(const GroupShape& G, long D, const NumberField& F, const Weierstrass<FieldElement>& E,
                     const std::string& source);
Witness make_kubert_witness(const GroupShape& G, long D, const NumberField& F, const FieldElement& b,
                            const FieldElement& c);

struct VerifyReport {
    bool ok = false;
    std::string message;
    TorsionGroup torsion;
};
// Rebuilds the field and curve from the stored data and checks that the
// curve is nonsingular, that its j-invariant is a root of the class
// polynomial of D, that the torsion subgroup is the stated group and, when
// d > 0, that the field degree divides d.
VerifyReport verify_witness(const Witness& w, int d = 0, const TorsionOptions& opt = {});

// Display strings in the generator e.
std::string field_string(const Witness& w);
std::string curve_string(const Witness& w);
std::string j_string(const Witness& w);

nlohmann::json to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const UniPoly& p);
UniPoly unipoly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KPoly& p);
KPoly kpoly_from_json(const nlohmann::json& j, const NumberField& K);

// The curves over Q realizing each degree-one group.
std::vector<Witness> rational_table_witnesses();

}  // namespace cmt
