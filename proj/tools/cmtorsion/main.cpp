#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmtorsion/engine/enumerate.hpp"

using namespace cmt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// A JSON array of group strings, or one group per line ('#' starts a comment).
std::vector<GroupShape> read_seed(const std::string& path) {
    const std::string text = slurp(path);
    std::vector<GroupShape> out;
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.is_array()) {
        for (const auto& s : j) out.push_back(parse_shape(s.get<std::string>()));
        return out;
    }
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) {
        line = line.substr(0, line.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_shape(line));
    }
    return out;
}

std::vector<Witness> read_witnesses(const nlohmann::json& j) {
    std::vector<Witness> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(witness_from_json(e));
    } else if (j.contains("schema")) {
        for (const DegreeResult& r : read_report(j))
            for (const GroupRecord& g : r.groups)
                if (g.witness) out.push_back(*g.witness);
    } else {
        out.push_back(witness_from_json(j));
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Torsion subgroups of CM elliptic curves over number fields"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string seed_file, format = "md", output;
    bool verbose = false;
    std::uint64_t prime_ceiling = cfg.torsion.prime_ceiling;
    long precision_ceiling = cfg.class_poly.precision_ceiling;
    std::string bounds_file;

    auto* en = app.add_subcommand("enumerate", "List the torsion groups occurring in degree d");
    en->add_option("--degree,-d", cfg.degree, "Field degree")->required()->check(CLI::PositiveNumber);
    en->add_option("--disc", cfg.discriminants, "Restrict to these discriminants");
    en->add_option("--seed", seed_file, "Known groups: JSON array or one per line");
    en->add_option("--cache", cfg.cache_dir, "Cache directory");
    en->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "md"}));
    en->add_flag("--strict", cfg.strict, "Treat unrecoverable c as an error");
    en->add_option("--prime-ceiling", prime_ceiling, "Largest residue field used for torsion bounds");
    en->add_option("--precision-ceiling", precision_ceiling, "Largest precision (digits) for class polynomials");
    en->add_option("--ceiling-scale", cfg.ceiling_scale, "Multiply every |D| bound")->check(CLI::PositiveNumber);
    en->add_option("--bounds", bounds_file, "Class number bound table (h max_abs_D per line)");
    en->add_flag("--literal-quadratic", cfg.literal_quadratic,
                 "Apply the phi(Nn) <= 4 cut for j = 0, 1728 in relative degree 2");
    en->add_option("--output,-o", output, "Write the report here instead of stdout");
    en->add_flag("--verbose,-v", verbose, "Progress on stderr");

    std::string wfile;
    int vdeg = 0;
    auto* ve = app.add_subcommand("verify", "Re-verify witnesses from a witness or report file");
    ve->add_option("WITNESS_FILE", wfile)->required();
    ve->add_option("--degree,-d", vdeg, "Also require the field degree to divide this");

    long sdisc = 0;
    int sdeg = 1;
    auto* si = app.add_subcommand("sieve", "Possible and sieved torsion exponents of an order");
    si->add_option("--disc", sdisc)->required();
    si->add_option("--deg", sdeg)->required()->check(CLI::PositiveNumber);
    bool s_literal = false;
    si->add_flag("--literal-quadratic", s_literal, "Apply the phi(Nn) <= 4 cut for j = 0, 1728 in relative degree 2");

    long rdisc = 0;
    std::string rj;
    int rN = 0;
    auto* re = app.add_subcommand("resultant", "Factored Kubert resultant");
    auto* rd_opt = re->add_option("--disc", rdisc, "Discriminant of the CM order");
    re->add_option("--j", rj, "Rational j-invariant instead of an order")->excludes(rd_opt);
    re->add_option("--N", rN)->required()->check(CLI::Range(4, 1000));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*en) {
            cfg.torsion.prime_ceiling = prime_ceiling;
            cfg.class_poly.precision_ceiling = precision_ceiling;
            if (!seed_file.empty()) cfg.seed = read_seed(seed_file);
            if (!bounds_file.empty()) cfg.bounds = parse_bound_table(slurp(bounds_file));
            if (verbose) cfg.log = [](const std::string& s) { std::clog << s << std::endl; };
            DegreeResult r = enumerate_degree(cfg);
            const std::string doc =
                emit_report({r}, format == "json" ? ReportFormat::Json : ReportFormat::Markdown);
            if (output.empty()) {
                std::cout << doc;
            } else {
                std::ofstream out(output);
                out << doc;
                if (!out) throw std::runtime_error("cannot write " + output);
            }
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
            return r.complete ? kExitOk : kExitPartial;
        }
        if (*ve) {
            bool all = true;
            for (const Witness& w : read_witnesses(nlohmann::json::parse(slurp(wfile)))) {
                VerifyReport v = verify_witness(w, vdeg);
                all = all && v.ok;
                std::cout << (v.ok ? "ok   " : "FAIL ") << to_string(w.group) << " over " << field_string(w) << ": "
                          << curve_string(w);
                if (!v.ok) std::cout << " (" << v.message << ")";
                std::cout << "\n";
            }
            return all ? kExitOk : kExitError;
        }
        if (*si) {
            QuadOrder O = make_order(sdisc);
            JField J = make_jfield(O);
            std::cout << "D = " << O.D << ", h = " << J.h() << ", w = " << O.w << "\n";
            std::cout << "possible exponents: " << join(possible_exponents(O, sdeg)) << "\n";
            std::cout << "sieved torsion: " << join(sieved_torsion(J, sdeg)) << "\n";
            std::vector<std::string> gs;
            PossibleGroupsOptions pg;
            pg.recompute_extra_unit_quadratic = !s_literal;
            for (const GroupShape& G : possible_groups(sdeg * J.h(), J, sieved_torsion(J, sdeg), pg))
                gs.push_back(to_string(G));
            std::cout << "possible groups (d = " << sdeg * J.h() << "): " << join(gs) << "\n";
            return kExitOk;
        }
        if (*re) {
            JField J = [&] {
                if (rj.empty()) return make_jfield(make_order(rdisc));
                Rational j0(rj);
                j0.canonicalize();
                return make_jfield(j0);
            }();
            std::cout << "Res_c for " << J.key() << ", N = " << rN << "\n";
            for (const auto& [f, m] : kubert_factors(J, rN))
                std::cout << "(" << to_string(f, "b", "a") << ")^" << m << "  [degree " << f.degree() << "]\n";
            std::cout << "degree sequence: " << join(degree_sequence(J, rN)) << "\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
