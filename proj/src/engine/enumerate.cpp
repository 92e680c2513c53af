#include "cmtorsion/engine/enumerate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

namespace cmt {

namespace {

struct Candidates {
    QuadOrder order;
    JField J;
    std::vector<GroupShape> groups;
};

using MemoKey = std::tuple<long, long, int, long>;

class Driver {
public:
    Driver(const RunConfig& cfg, CacheStore* cache) : cfg_(cfg), cache_(cache) {}

    DegreeResult run(const RunConfig& cfg);

private:
    void log(const std::string& s) const {
        if (cfg_.log) cfg_.log(s);
    }
    RuledOutResult decide(const GroupShape& G, int d, const Candidates& c);

    const RunConfig& cfg_;
    CacheStore* cache_;
    std::map<MemoKey, RuledOutResult> memo_;
    std::map<int, DegreeResult> done_;
};

RuledOutResult Driver::decide(const GroupShape& G, int d, const Candidates& c) {
    MemoKey key{G.N, G.n, d, c.order.D};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<RuledOutResult> r;
    if (cache_) r = cache_->load_ruled_out(G, d, c.order.D);
    if (!r) {
        log("ruled_out(" + to_string(G) + ", " + std::to_string(d) + ", D=" + std::to_string(c.order.D) + ")");
        RuledOutOptions opt{cfg_.torsion, cfg_.strict};
        r = ruled_out(G, d, c.J, opt);
        if (cache_) cache_->save_ruled_out(G, d, c.order.D, *r);
    }
    for (const auto& w : r->warnings) log("warning: " + w);
    return memo_[key] = *r;
}

DegreeResult Driver::run(const RunConfig& cfg) {
    const int d = cfg.degree;
    if (auto it = done_.find(d); it != done_.end()) return it->second;

    DegreeResult res;
    res.degree = d;
    std::map<GroupShape, GroupRecord> L;
    for (const Witness& w : rational_table_witnesses()) L[w.group] = {w.group, "degree 1", w};

    if (cfg.seed) {
        for (const GroupShape& G : *cfg.seed)
            if (!L.count(G)) L[G] = {G, "seed", std::nullopt};
    } else {
        for (int k = 2; k < d; ++k) {
            if (d % k) continue;
            RunConfig sub = cfg;
            sub.degree = k;
            DegreeResult r = run(sub);
            for (const GroupRecord& g : r.groups)
                if (!L.count(g.group)) L[g.group] = {g.group, "degree " + std::to_string(k), g.witness};
            if (!r.complete) {
                res.complete = false;
                res.warnings.push_back("degree " + std::to_string(k) + " seed run is partial");
            }
        }
    }

    // step 1
    std::vector<QuadOrder> orders = enumerate_orders(admissible_class_numbers(d), cfg.bounds, cfg.ceiling_scale);
    if (!cfg.discriminants.empty()) {
        std::erase_if(orders, [&](const QuadOrder& O) {
            return std::find(cfg.discriminants.begin(), cfg.discriminants.end(), O.D) == cfg.discriminants.end();
        });
    }
    PossibleGroupsOptions pg;
    pg.recompute_extra_unit_quadratic = !cfg.literal_quadratic;
    std::vector<Candidates> A;
    std::set<GroupShape> P;
    for (const QuadOrder& O : orders) {
        res.orders.push_back(O.D);
        JField J = make_jfield(O, cfg.class_poly);
        const int h = J.h();
        auto groups = possible_groups(d, J, sieved_torsion(J, d / h), pg);
        std::sort(groups.begin(), groups.end());
        log("D=" + std::to_string(O.D) + ": " + std::to_string(groups.size()) + " candidate groups");
        P.insert(groups.begin(), groups.end());
        A.push_back({O, std::move(J), std::move(groups)});
    }

    // steps 2 and 3, restarting whenever a group is found
    std::vector<RuledOutRecord> rejected;
    std::set<std::string> warnings;
    for (bool restart = true; restart;) {
        restart = false;
        rejected.clear();
        warnings.clear();
        for (const GroupShape& G : P) {
            if (L.count(G)) continue;
            RuledOutRecord rec{G, {}};
            for (const Candidates& c : A) {
                if (!std::binary_search(c.groups.begin(), c.groups.end(), G)) continue;
                RuledOutResult r = decide(G, d, c);
                warnings.insert(r.warnings.begin(), r.warnings.end());
                if (!r.ruled_out) {
                    log("found " + to_string(G) + " at D=" + std::to_string(c.order.D));
                    L[G] = {G, "search", r.witness};
                    restart = true;
                    break;
                }
                rec.discriminants.push_back(c.order.D);
            }
            if (restart) break;
            rejected.push_back(std::move(rec));
        }
    }
    res.ruled_out = std::move(rejected);
    res.warnings.insert(res.warnings.end(), warnings.begin(), warnings.end());
    if (!warnings.empty()) res.complete = false;

    for (auto& [G, rec] : L) {
        if (rec.witness) {
            VerifyReport v = verify_witness(*rec.witness, d, cfg.torsion);
            rec.witness->verified = v.ok;
            if (!v.ok) {
                res.complete = false;
                res.warnings.push_back("witness for " + to_string(G) + " failed verification: " + v.message);
            }
        }
        res.groups.push_back(rec);
    }
    done_[d] = res;
    return res;
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '|') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

std::set<int> admissible_class_numbers(int d) {
    std::set<int> h;
    for (int k = 1; k <= d; ++k)
        if (d % k == 0 && (k == 1 || k != d)) h.insert(k);
    return h;
}

DegreeResult enumerate_degree(const RunConfig& cfg) {
    if (cfg.degree < 1) throw std::invalid_argument("degree must be positive");
    std::unique_ptr<CacheStore> store;
    if (!cfg.cache_dir.empty()) {
        nlohmann::json params = {{"prime_ceiling", cfg.torsion.prime_ceiling},
                                 {"precision_ceiling", cfg.class_poly.precision_ceiling},
                                 {"strict", cfg.strict},
                                 {"literal_quadratic", cfg.literal_quadratic}};
        store = std::make_unique<CacheStore>(cfg.cache_dir, params);
    }
    CacheInstallGuard guard(store.get());
    Driver driver(cfg, store.get());
    return driver.run(cfg);
}

nlohmann::json report_json(const std::vector<DegreeResult>& results) {
    nlohmann::json degrees = nlohmann::json::array();
    for (const DegreeResult& r : results) {
        nlohmann::json groups = nlohmann::json::array();
        for (const GroupRecord& g : r.groups) {
            nlohmann::json e = {{"group", to_string(g.group)}, {"origin", g.origin}};
            if (g.witness) e["witness"] = to_json(*g.witness);
            groups.push_back(e);
        }
        nlohmann::json rejected = nlohmann::json::array();
        for (const RuledOutRecord& x : r.ruled_out)
            rejected.push_back({{"group", to_string(x.group)}, {"discriminants", x.discriminants}});
        degrees.push_back({{"degree", r.degree},
                           {"complete", r.complete},
                           {"orders", r.orders},
                           {"groups", groups},
                           {"ruled_out", rejected},
                           {"warnings", r.warnings}});
    }
    return {{"schema", "cmtorsion-report"}, {"version", kReportSchemaVersion}, {"degrees", degrees}};
}

std::vector<DegreeResult> read_report(const nlohmann::json& j) {
    if (j.value("schema", "") != "cmtorsion-report" || j.value("version", 0) != kReportSchemaVersion)
        throw std::invalid_argument("not a cmtorsion report of schema version " + std::to_string(kReportSchemaVersion));
    std::vector<DegreeResult> out;
    for (const auto& e : j.at("degrees")) {
        DegreeResult r;
        r.degree = e.at("degree").get<int>();
        r.complete = e.at("complete").get<bool>();
        r.orders = e.at("orders").get<std::vector<long>>();
        for (const auto& g : e.at("groups")) {
            GroupRecord rec{parse_shape(g.at("group").get<std::string>()), g.at("origin").get<std::string>(),
                            std::nullopt};
            if (g.contains("witness")) rec.witness = witness_from_json(g.at("witness"));
            r.groups.push_back(std::move(rec));
        }
        for (const auto& x : e.at("ruled_out"))
            r.ruled_out.push_back({parse_shape(x.at("group").get<std::string>()),
                                   x.at("discriminants").get<std::vector<long>>()});
        r.warnings = e.at("warnings").get<std::vector<std::string>>();
        out.push_back(std::move(r));
    }
    return out;
}

std::string emit_report(const std::vector<DegreeResult>& results, ReportFormat format) {
    if (format == ReportFormat::Json) return report_json(results).dump(2) + "\n";
    std::ostringstream os;
    os << "# Torsion subgroups of CM elliptic curves\n\n";
    const char* header = "| Group | Field | Curve | j | D | Origin |\n|---|---|---|---|---|---|\n";
    if (results.empty()) os << header;
    for (const DegreeResult& r : results) {
        os << "## Degree " << r.degree << "\n\n";
        os << "Status: " << (r.complete ? "complete" : "partial") << "\n\n";
        os << "Groups:";
        for (std::size_t i = 0; i < r.groups.size(); ++i) os << (i ? ", " : " ") << to_string(r.groups[i].group);
        os << "\n\n" << header;
        for (const GroupRecord& g : r.groups) {
            os << "| " << to_string(g.group) << " | ";
            if (g.witness) {
                const Witness& w = *g.witness;
                os << md_escape(field_string(w)) << " | " << md_escape(curve_string(w)) << " | "
                   << md_escape(j_string(w)) << " | " << w.D << " | ";
            } else {
                os << " |  |  |  | ";
            }
            os << g.origin << " |\n";
        }
        if (!r.ruled_out.empty()) {
            os << "\n### Ruled out\n\n| Group | Orders |\n|---|---|\n";
            for (const RuledOutRecord& x : r.ruled_out) {
                os << "| " << to_string(x.group) << " |";
                for (std::size_t i = 0; i < x.discriminants.size(); ++i)
                    os << (i ? ", " : " ") << x.discriminants[i];
                os << " |\n";
            }
        }
        if (!r.warnings.empty()) {
            os << "\n### Warnings\n\n";
            for (const auto& w : r.warnings) os << "- " << w << "\n";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace cmt
