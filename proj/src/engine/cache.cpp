#include "cmtorsion/engine/cache.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

namespace cmt {

namespace {

std::string file_stem(const std::string& key) {
    std::string s;
    for (char ch : key) s += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-') ? ch : '_';
    if (s.size() > 80) s.resize(80);
    // FNV-1a keeps sanitized keys apart
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << s << "_" << std::hex << h;
    return os.str();
}

nlohmann::json zpoly_json(const ZPoly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const BigInt& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

ZPoly zpoly_from(const nlohmann::json& j) {
    std::vector<BigInt> v;
    for (const auto& c : j) v.emplace_back(c.get<std::string>());
    return ZPoly(std::move(v));
}

std::string rkey(const JField& J, int N) { return J.key() + "/N" + std::to_string(N); }

}  // namespace

CacheStore::CacheStore(std::filesystem::path dir, nlohmann::json params)
    : dir_(std::move(dir)), params_(std::move(params)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path CacheStore::path_for(const std::string& kind, const std::string& key) const {
    return dir_ / kind / (file_stem(key) + ".json");
}

std::optional<nlohmann::json> CacheStore::read(const std::string& kind, const std::string& key) {
    const auto path = path_for(kind, key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        nlohmann::json rec = nlohmann::json::parse(in);
        if (rec.value("format", "") != "cmtorsion-cache" || rec.value("version", 0) != kCacheFormatVersion)
            return std::nullopt;
        if (rec.value("kind", "") != kind || rec.value("key", "") != key) return std::nullopt;
        return rec.at("data");
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void CacheStore::write(const std::string& kind, const std::string& key, const nlohmann::json& data) {
    nlohmann::json rec;
    rec["format"] = "cmtorsion-cache";
    rec["version"] = kCacheFormatVersion;
    rec["kind"] = kind;
    rec["key"] = key;
    rec["params"] = params_;
    rec["data"] = data;
    const auto path = path_for(kind, key);
    std::lock_guard<std::mutex> lock(mutex_);
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter_++);
    {
        std::ofstream out(tmp);
        out << rec.dump(1) << "\n";
        if (!out) throw std::runtime_error("cannot write cache record " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<ZPoly> CacheStore::load_class_poly(long D) {
    auto d = read("classpoly", "D" + std::to_string(D));
    if (!d) return std::nullopt;
    return zpoly_from(d->at("poly"));
}

void CacheStore::save_class_poly(long D, const ZPoly& H, long precision) {
    write("classpoly", "D" + std::to_string(D), {{"poly", zpoly_json(H)}, {"precision", precision}});
}

std::optional<KPoly> CacheStore::load_resultant(const JField& J, int N) {
    auto d = read("resultant", rkey(J, N));
    if (!d) return std::nullopt;
    return kpoly_from_json(d->at("poly"), J.K);
}

void CacheStore::save_resultant(const JField& J, int N, const KPoly& R) {
    write("resultant", rkey(J, N), {{"poly", to_json(R)}});
}

std::optional<std::vector<std::pair<KPoly, int>>> CacheStore::load_factors(const JField& J, int N) {
    auto d = read("factors", rkey(J, N));
    if (!d) return std::nullopt;
    std::vector<std::pair<KPoly, int>> out;
    for (const auto& f : d->at("factors")) out.emplace_back(kpoly_from_json(f.at("poly"), J.K), f.at("mult").get<int>());
    return out;
}

void CacheStore::save_factors(const JField& J, int N, const std::vector<std::pair<KPoly, int>>& f) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& [p, m] : f) a.push_back({{"poly", to_json(p)}, {"mult", m}});
    write("factors", rkey(J, N), {{"factors", a}});
}

std::optional<std::vector<long>> CacheStore::load_sieved(const JField& J, int deg) {
    auto d = read("sieved", J.key() + "/deg" + std::to_string(deg));
    if (!d) return std::nullopt;
    return d->at("exponents").get<std::vector<long>>();
}

void CacheStore::save_sieved(const JField& J, int deg, const std::vector<long>& L) {
    write("sieved", J.key() + "/deg" + std::to_string(deg), {{"exponents", L}});
}

std::optional<RuledOutResult> CacheStore::load_ruled_out(const GroupShape& G, int d, long D) {
    auto data = read("ruledout", to_string(G) + "/d" + std::to_string(d) + "/D" + std::to_string(D));
    if (!data) return std::nullopt;
    RuledOutResult r;
    r.ruled_out = data->at("ruled_out").get<bool>();
    if (data->contains("witness")) r.witness = witness_from_json(data->at("witness"));
    r.warnings = data->value("warnings", std::vector<std::string>{});
    return r;
}

void CacheStore::save_ruled_out(const GroupShape& G, int d, long D, const RuledOutResult& r) {
    nlohmann::json data;
    data["ruled_out"] = r.ruled_out;
    if (r.witness) data["witness"] = to_json(*r.witness);
    data["warnings"] = r.warnings;
    write("ruledout", to_string(G) + "/d" + std::to_string(d) + "/D" + std::to_string(D), data);
}

CacheInstallGuard::CacheInstallGuard(CacheStore* store) { install_sieve_cache(store); }
CacheInstallGuard::~CacheInstallGuard() { install_sieve_cache(nullptr); }

}  // namespace cmt
