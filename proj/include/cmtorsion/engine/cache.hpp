#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "cmtorsion/engine/ruled_out.hpp"
#include "cmtorsion/sieve/sieve.hpp"

#include <json.hpp>

namespace cmt {

inline constexpr int kCacheFormatVersion = 1;

// One JSON file per record under a directory, replaced atomically by
// rename. Every record carries the format version and the parameters that
// produced it; records with another version are ignored.
class CacheStore : public SieveCache {
public:
    CacheStore(std::filesystem::path dir, nlohmann::json params);

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<ZPoly> load_class_poly(long D) override;
    void save_class_poly(long D, const ZPoly& H, long precision) override;
    std::optional<KPoly> load_resultant(const JField& J, int N) override;
    void save_resultant(const JField& J, int N, const KPoly& R) override;
    std::optional<std::vector<std::pair<KPoly, int>>> load_factors(const JField& J, int N) override;
    void save_factors(const JField& J, int N, const std::vector<std::pair<KPoly, int>>& f) override;
    std::optional<std::vector<long>> load_sieved(const JField& J, int deg) override;
    void save_sieved(const JField& J, int deg, const std::vector<long>& L) override;

    std::optional<RuledOutResult> load_ruled_out(const GroupShape& G, int d, long D);
    void save_ruled_out(const GroupShape& G, int d, long D, const RuledOutResult& r);

    // Raw access, used by tests and the report reader.
    std::optional<nlohmann::json> read(const std::string& kind, const std::string& key);
    void write(const std::string& kind, const std::string& key, const nlohmann::json& data);
    std::filesystem::path path_for(const std::string& kind, const std::string& key) const;

private:
    std::filesystem::path dir_;
    nlohmann::json params_;
    std::mutex mutex_;
    unsigned long counter_ = 0;
};

// Installs a store as the sieve cache for the lifetime of the guard.
class CacheInstallGuard {
public:
    explicit CacheInstallGuard(CacheStore* store);
    ~CacheInstallGuard();
    CacheInstallGuard(const CacheInstallGuard&) = delete;
    CacheInstallGuard& operator=(const CacheInstallGuard&) = delete;
};

}  // namespace cmt
