#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmtorsion/engine/cache.hpp"
#include "cmtorsion/engine/ruled_out.hpp"
#include "cmtorsion/engine/witness.hpp"

namespace cmt {

struct RunConfig {
    int degree = 1;
    std::vector<long> discriminants;  // empty: every order admitted by the class-number filter
    TorsionOptions torsion;
    ClassPolyOptions class_poly;
    std::string cache_dir;  // empty: no persistent cache
    // Groups known to occur. Unset: the outputs of the proper divisors of
    // the degree, computed recursively.
    std::optional<std::vector<GroupShape>> seed;
    bool strict = false;
    // Use the printed phi(Nn) <= 4 cut for j = 0, 1728 at relative degree 2
    // instead of recomputing those cases.
    bool literal_quadratic = false;
    long ceiling_scale = 1;
    BoundTable bounds = default_bound_table();
    std::function<void(const std::string&)> log;  // progress messages
};

struct GroupRecord {
    GroupShape group;
    std::string origin;  // "degree 1", "seed", "degree k" or "search"
    std::optional<Witness> witness;
};

struct RuledOutRecord {
    GroupShape group;
    std::vector<long> discriminants;  // orders whose candidate lists contained the group
};

struct DegreeResult {
    int degree = 0;
    std::vector<GroupRecord> groups;  // sorted by group
    std::vector<RuledOutRecord> ruled_out;
    std::vector<long> orders;  // discriminants examined
    std::vector<std::string> warnings;
    bool complete = true;  // false when a branch was skipped
};

// Class numbers h with h | d and (h = 1 or h != d).
std::set<int> admissible_class_numbers(int d);

DegreeResult enumerate_degree(const RunConfig& cfg);

enum class ReportFormat { Json, Markdown };
inline constexpr int kReportSchemaVersion = 1;

std::string emit_report(const std::vector<DegreeResult>& results, ReportFormat format);
nlohmann::json report_json(const std::vector<DegreeResult>& results);
std::vector<DegreeResult> read_report(const nlohmann::json& j);

}  // namespace cmt
