#include "cmtorsion/engine/witness.hpp"

#include <sstream>

#include "cmtorsion/quadorders/quadorders.hpp"

namespace cmt {

namespace {

std::vector<Rational> coords_of(const FieldElement& a, int degree) {
    std::vector<Rational> c = a.poly().coeffs();
    c.resize(static_cast<std::size_t>(degree));
    return c;
}

FieldElement element_of(const NumberField& F, const std::vector<Rational>& c) { return F.element(c); }

std::string elem_string(const FieldElement& a) {
    if (a.is_rational()) return to_string(a.to_rational());
    return to_string(a, "e");
}

// Parenthesized unless it is a single signed term.
std::string coeff_term(const std::string& s) {
    if (s.find(" + ") == std::string::npos && s.find(" - ") == std::string::npos) return s;
    return "(" + s + ")";
}

}  // namespace

NumberField Witness::field() const {
    if (field_poly.degree() <= 1) return NumberField::rationals();
    return NumberField(field_poly, "", true);
}

Weierstrass<FieldElement> Witness::curve() const {
    NumberField F = field();
    if (a.size() != 5) throw std::invalid_argument("witness needs five curve coefficients");
    return Weierstrass<FieldElement>(element_of(F, a[0]), element_of(F, a[1]), element_of(F, a[2]),
                                     element_of(F, a[3]), element_of(F, a[4]));
}

Witness make_witness(const GroupShape& G, long D, const NumberField& F, const Weierstrass<FieldElement>& E,
                     const std::string& source) {
    Witness w;
    w.group = G;
    w.D = D;
    w.field_poly = F.poly();
    const int n = F.degree();
    auto lift = [&](const FieldElement& x) { return x.has_field() ? x : F.element(x.to_rational()); };
    for (const FieldElement* x : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6}) w.a.push_back(coords_of(lift(*x), n));
    w.source = source;
    return w;
}

Witness make_kubert_witness(const GroupShape& G, long D, const NumberField& F, const FieldElement& b,
                            const FieldElement& c) {
    auto lift = [&](const FieldElement& x) { return x.has_field() ? x : F.element(x.to_rational()); };
    Witness w = make_witness(G, D, F, Weierstrass<FieldElement>::kubert(lift(b), lift(c)), "kubert");
    w.bc = std::make_pair(coords_of(lift(b), F.degree()), coords_of(lift(c), F.degree()));
    return w;
}

VerifyReport verify_witness(const Witness& w, int d, const TorsionOptions& opt) {
    VerifyReport r;
    try {
        if (w.group.N % w.group.n) {
            r.message = "group shape has n not dividing N";
            return r;
        }
        if (d > 0 && d % w.field_degree()) {
            r.message = "field degree " + std::to_string(w.field_degree()) + " does not divide " + std::to_string(d);
            return r;
        }
        NumberField F = w.field();
        Weierstrass<FieldElement> E = w.curve();
        if (w.bc) {
            Weierstrass<FieldElement> K =
                Weierstrass<FieldElement>::kubert(element_of(F, w.bc->first), element_of(F, w.bc->second));
            if (!(K.a1 == E.a1 && K.a2 == E.a2 && K.a3 == E.a3 && K.a4 == E.a4 && K.a6 == E.a6)) {
                r.message = "stored coefficients differ from E(b, c)";
                return r;
            }
        }
        if (E.is_singular()) {
            r.message = "singular curve";
            return r;
        }
        FieldElement j = E.j_invariant();
        JField J = make_jfield(make_order(w.D));
        bool j_ok;
        if (J.K.is_rational()) {
            j_ok = j == FieldElement(F.element(J.j.to_rational()));
        } else {
            FieldElement v = F.zero();
            const UniPoly& H = J.K.poly();
            for (int i = H.degree(); i >= 0; --i) v = v * j + F.element(H[i]);
            j_ok = v.is_zero();
        }
        if (!j_ok) {
            r.message = "j-invariant is not a root of the class polynomial of D = " + std::to_string(w.D);
            return r;
        }
        r.torsion = torsion_subgroup(E, F, opt);
        if (r.torsion.N != w.group.N || r.torsion.n != w.group.n) {
            r.message = "torsion is " + shape_string(r.torsion.N, r.torsion.n) + ", expected " + to_string(w.group);
            return r;
        }
        r.ok = true;
        r.message = "ok";
    } catch (const std::exception& e) {
        r.message = std::string("verification failed: ") + e.what();
    }
    return r;
}

std::string field_string(const Witness& w) {
    if (w.field_poly.degree() <= 1) return "Q";
    return "Q[e]/(" + to_string(w.field_poly, "e") + ")";
}

std::string curve_string(const Witness& w) {
    NumberField F = w.field();
    if (w.bc) {
        return "E(" + elem_string(element_of(F, w.bc->first)) + ", " + elem_string(element_of(F, w.bc->second)) + ")";
    }
    auto E = w.curve();
    std::ostringstream lhs, rhs;
    lhs << "y^2";
    auto put = [](std::ostringstream& os, const FieldElement& c, const std::string& mono) {
        if (c.is_zero()) return;
        std::string s = elem_string(c);
        if (s == "1") {
            os << " + " << mono;
        } else if (s == "-1") {
            os << " - " << mono;
        } else if (c.is_rational() && s[0] == '-') {
            os << " - " << s.substr(1) << mono;
        } else {
            os << " + " << coeff_term(s) << mono;
        }
    };
    put(lhs, E.a1, "xy");
    put(lhs, E.a3, "y");
    rhs << "x^3";
    put(rhs, E.a2, "x^2");
    put(rhs, E.a4, "x");
    if (!E.a6.is_zero()) {
        std::string s = elem_string(E.a6);
        if (E.a6.is_rational() && s[0] == '-') rhs << " - " << s.substr(1);
        else rhs << " + " << coeff_term(s);
    }
    return lhs.str() + " = " + rhs.str();
}

std::string j_string(const Witness& w) {
    try {
        FieldElement j = w.curve().j_invariant();
        return elem_string(j);
    } catch (const std::exception&) {
        return "?";
    }
}

nlohmann::json to_json(const Rational& r) { return r.get_str(); }

Rational rational_from_json(const nlohmann::json& j) {
    Rational r(j.get<std::string>());
    r.canonicalize();
    return r;
}

nlohmann::json to_json(const UniPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rational& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

UniPoly unipoly_from_json(const nlohmann::json& j) {
    std::vector<Rational> v;
    for (const auto& c : j) v.push_back(rational_from_json(c));
    return UniPoly(std::move(v));
}

nlohmann::json to_json(const KPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const FieldElement& c : p.coeffs()) a.push_back(to_json(c.poly()));
    return a;
}

KPoly kpoly_from_json(const nlohmann::json& j, const NumberField& K) {
    std::vector<FieldElement> v;
    for (const auto& c : j) v.push_back(K.element(unipoly_from_json(c)));
    return KPoly(std::move(v));
}

namespace {

nlohmann::json coords_json(const std::vector<Rational>& c) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rational& r : c) a.push_back(to_json(r));
    return a;
}

std::vector<Rational> coords_from_json(const nlohmann::json& j) {
    std::vector<Rational> v;
    for (const auto& c : j) v.push_back(rational_from_json(c));
    return v;
}

}  // namespace

nlohmann::json to_json(const Witness& w) {
    nlohmann::json j;
    j["group"] = to_string(w.group);
    j["D"] = w.D;
    j["field_poly"] = to_json(w.field_poly);
    nlohmann::json a = nlohmann::json::array();
    for (auto& c : w.a) a.push_back(coords_json(c));
    j["a"] = a;
    if (w.bc) {
        j["bc"]["b"] = coords_json(w.bc->first);
        j["bc"]["c"] = coords_json(w.bc->second);
    }
    j["source"] = w.source;
    j["verified"] = w.verified;
    return j;
}

Witness witness_from_json(const nlohmann::json& j) {
    Witness w;
    w.group = parse_shape(j.at("group").get<std::string>());
    w.D = j.at("D").get<long>();
    w.field_poly = unipoly_from_json(j.at("field_poly"));
    for (const auto& c : j.at("a")) w.a.push_back(coords_from_json(c));
    if (j.contains("bc")) 
        w.bc = std::make_pair(coords_from_json(j.at("bc").at("b")), coords_from_json(j.at("bc").at("c")));
    w.source = j.value("source", "");
    w.verified = j.value("verified", false);
    return w;
}

std::vector<Witness> rational_table_witnesses() {
    NumberField Q = NumberField::rationals();
    auto short_form = [&](long A, long B) {
        return Weierstrass<FieldElement>::short_form(Q.element(Rational(A)), Q.element(Rational(B)));
    };
    return {
        make_witness({1, 1}, -3, Q, short_form(0, 2), "table"),
        make_witness({2, 1}, -3, Q, short_form(0, -1), "table"),
        make_witness({3, 1}, -3, Q, short_form(0, 16), "table"),
        make_witness({4, 1}, -4, Q, short_form(4, 0), "table"),
        make_witness({6, 1}, -3, Q, short_form(0, 1), "table"),
        make_witness({2, 2}, -4, Q, short_form(-4, 0), "table"),
    };
}

}  // namespace cmt
