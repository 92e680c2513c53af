#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cmtorsion/engine/enumerate.hpp"

using namespace cmt;
namespace fs = std::filesystem;

namespace {

std::vector<GroupShape> shapes(const DegreeResult& r) {
    std::vector<GroupShape> out;
    for (const auto& g : r.groups) out.push_back(g.group);
    return out;
}

std::vector<GroupShape> parse_all(std::initializer_list<const char*> names) {
    std::vector<GroupShape> out;
    for (const char* s : names) out.push_back(parse_shape(s));
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<GroupShape>& degree_one() {
    static const auto v = parse_all({"0", "Z/2", "Z/3", "Z/4", "Z/6", "Z/2 x Z/2"});
    return v;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cmt_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

DegreeResult run(int d, const std::string& cache = "") {
    RunConfig cfg;
    cfg.degree = d;
    cfg.cache_dir = cache;
    return enumerate_degree(cfg);
}

}  // namespace

TEST(Enumerate, AdmissibleClassNumbers) {
    EXPECT_EQ(admissible_class_numbers(1), (std::set<int>{1}));
    EXPECT_EQ(admissible_class_numbers(2), (std::set<int>{1}));
    EXPECT_EQ(admissible_class_numbers(4), (std::set<int>{1, 2}));
    EXPECT_EQ(admissible_class_numbers(6), (std::set<int>{1, 2, 3}));
}

TEST(Enumerate, DegreeOne) {
    DegreeResult r = run(1);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(shapes(r), degree_one());
    EXPECT_TRUE(r.ruled_out.empty());
    for (const auto& g : r.groups) {
        ASSERT_TRUE(g.witness);
        EXPECT_TRUE(g.witness->verified) << to_string(g.group);
    }
}

TEST(Enumerate, DegreeTwo) {
    DegreeResult r = run(2);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(shapes(r), parse_all({"0", "Z/2", "Z/3", "Z/4", "Z/6", "Z/7", "Z/10", "Z/2 x Z/2", "Z/2 x Z/4",
                                    "Z/2 x Z/6", "Z/3 x Z/3"}));
    for (const auto& g : r.groups) {
        ASSERT_TRUE(g.witness) << to_string(g.group);
        EXPECT_TRUE(g.witness->verified) << to_string(g.group);
        // independent re-check from the serialized form
        Witness w = witness_from_json(to_json(*g.witness));
        EXPECT_TRUE(verify_witness(w, 2).ok) << to_string(g.group);
    }
    // monotonicity
    auto s = shapes(r);
    for (const auto& G : degree_one()) EXPECT_TRUE(std::binary_search(s.begin(), s.end(), G));
}

TEST(Enumerate, SeededLiteralRunRulesOutOnlyFive) {
    RunConfig cfg;
    cfg.degree = 2;
    cfg.literal_quadratic = true;
    cfg.seed = parse_all({"0", "Z/2", "Z/3", "Z/4", "Z/6", "Z/7", "Z/10", "Z/2 x Z/2", "Z/2 x Z/4", "Z/2 x Z/6",
                          "Z/3 x Z/3"});
    DegreeResult r = enumerate_degree(cfg);
    ASSERT_EQ(r.ruled_out.size(), 1u);
    EXPECT_EQ(r.ruled_out[0].group, (GroupShape{5, 1}));
}

TEST(Enumerate, OrderFilter) {
    RunConfig cfg;
    cfg.degree = 2;
    cfg.discriminants = {-4};
    DegreeResult r = enumerate_degree(cfg);
    EXPECT_EQ(r.orders, std::vector<long>{-4});
    auto s = shapes(r);
    EXPECT_TRUE(std::binary_search(s.begin(), s.end(), GroupShape{10, 1}));
    EXPECT_FALSE(std::binary_search(s.begin(), s.end(), GroupShape{7, 1}));
}

TEST(Enumerate, DeterministicReports) {
    EXPECT_EQ(emit_report({run(2)}, ReportFormat::Json), emit_report({run(2)}, ReportFormat::Json));
}

TEST(Cache, WarmRunIsByteIdentical) {
    TempDir dir;
    const std::string cold = emit_report({run(2, dir.path)}, ReportFormat::Json);
    ASSERT_TRUE(fs::exists(dir.path / "ruledout"));
    const std::string warm = emit_report({run(2, dir.path)}, ReportFormat::Json);
    EXPECT_EQ(cold, warm);
    EXPECT_EQ(emit_report({run(2, dir.path)}, ReportFormat::Markdown), emit_report({run(2)}, ReportFormat::Markdown));
    for (const auto& e : fs::recursive_directory_iterator(dir.path))
        EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos) << e.path();
}

TEST(Cache, RecordsCarryVersionAndParameters) {
    TempDir dir;
    CacheStore store(dir.path, {{"prime_ceiling", 5000}});
    store.write("misc", "k/1", {{"x", 1}});
    std::ifstream in(store.path_for("misc", "k/1"));
    auto rec = nlohmann::json::parse(in);
    EXPECT_EQ(rec["version"], kCacheFormatVersion);
    EXPECT_EQ(rec["params"]["prime_ceiling"], 5000);
    EXPECT_EQ(store.read("misc", "k/1")->at("x"), 1);
    EXPECT_FALSE(store.read("misc", "k/2"));

    // a record of another version is ignored
    rec["version"] = kCacheFormatVersion + 1;
    std::ofstream(store.path_for("misc", "k/1")) << rec.dump();
    EXPECT_FALSE(store.read("misc", "k/1"));
    // so is a truncated one
    std::ofstream(store.path_for("misc", "k/1")) << "{\"format\":";
    EXPECT_FALSE(store.read("misc", "k/1"));
}

TEST(Cache, SieveRecordsRoundTrip) {
    TempDir dir;
    CacheStore store(dir.path, nlohmann::json::object());
    JField J = make_jfield(make_order(-7));
    const auto& f = kubert_factors(J, 7);
    store.save_factors(J, 7, f);
    auto back = store.load_factors(J, 7);
    ASSERT_TRUE(back);
    ASSERT_EQ(back->size(), f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ((*back)[i].first, f[i].first);
        EXPECT_EQ((*back)[i].second, f[i].second);
    }
    store.save_sieved(J, 2, {1, 2, 7});
    EXPECT_EQ(store.load_sieved(J, 2), (std::vector<long>{1, 2, 7}));
    store.save_class_poly(-15, ZPoly({BigInt(-121287375), BigInt(191025), BigInt(1)}), 40);
    EXPECT_EQ(store.load_class_poly(-15)->degree(), 2);
}

TEST(Report, MarkdownDegreeOne) {
    std::string md = emit_report({run(1)}, ReportFormat::Markdown);
    EXPECT_NE(md.find("| Group | Field | Curve | j | D | Origin |"), std::string::npos);
    EXPECT_NE(md.find("| Z/4 | Q | y^2 = x^3 + 4x | 1728 |"), std::string::npos);
    EXPECT_NE(md.find("| Z/6 | Q | y^2 = x^3 + 1 | 0 |"), std::string::npos);
    int rows = 0;
    for (std::size_t p = 0; (p = md.find("\n| ", p)) != std::string::npos; ++p) ++rows;
    EXPECT_EQ(rows, 1 + 6);  // header plus one row per group
}

TEST(Report, EmptyIsHeadersOnly) {
    std::string md = emit_report({}, ReportFormat::Markdown);
    EXPECT_NE(md.find("| Group |"), std::string::npos);
    EXPECT_EQ(md.find("Degree"), std::string::npos);
    auto j = report_json({});
    EXPECT_TRUE(j["degrees"].empty());
    EXPECT_EQ(j["version"], kReportSchemaVersion);
}

TEST(Report, JsonRoundTrip) {
    std::vector<DegreeResult> rs{run(1), run(2)};
    auto j = report_json(rs);
    EXPECT_EQ(report_json(read_report(nlohmann::json::parse(j.dump()))), j);
    nlohmann::json bad = j;
    bad["version"] = 0;
    EXPECT_THROW(read_report(bad), std::invalid_argument);
}
