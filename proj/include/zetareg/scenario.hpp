#ifndef ZETAREG_SCENARIO_HPP
#define ZETAREG_SCENARIO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zetareg/chowcat.hpp"
#include "zetareg/geometry.hpp"
#include "zetareg/weight.hpp"
#include "zetareg/zeta.hpp"

namespace zetareg {

using Json = nlohmann::ordered_json;

// One verification request loaded from a schema-1 JSON file.
struct Scenario {
    std::string name;
    unsigned long p = 2;
    unsigned e = 1;
    FieldRef field;

    SpecPtr variety;                       // optional
    std::optional<SNCConfig> snc;
    // Per-level stratum varieties, parallel to snc->levels.
    std::vector<std::vector<SpecPtr>> strata;
    std::optional<RegulatorAssembly> assembly;
    std::optional<ChowProfile> profile;

    bool sign_only = false; // low-dimension regime: compare up to sign only

    std::optional<std::pair<size_t, size_t>> zeta_bound;
    size_t zeta_guard = 2;
    std::optional<size_t> depth; // number of point counts N_1..N_depth

    struct Target {
        std::string statement;
        long r = 0;
    };
    std::vector<Target> targets;
};

struct TargetResult {
    std::string statement;
    std::string verdict; // match | mismatch | skipped | spade-failed | error
    std::string reason;
    std::optional<Rat> lhs, rhs;
    std::optional<Rat> lhs_stripped, rhs_stripped;
    std::vector<std::pair<std::string, std::string>> factors;
};

struct ScenarioReport {
    std::string name;
    std::vector<TargetResult> targets;
    bool all_match = true; // ignoring skipped targets
    bool had_error = false;
};

// Variety / boundary / profile (de)serialization.
SpecPtr variety_from_json(const Json& j, const FieldRef& base);
Json variety_to_json(const SpecPtr& spec);
SNCConfig snc_from_json(const Json& j);
Json snc_to_json(const SNCConfig& cfg);
FQGroup fqgroup_from_json(const Json& j);
Json fqgroup_to_json(const FQGroup& g);
// Accepts a full table, a builder object, or a reference into a catalog file.
ChowProfile profile_from_json(const Json& j, const std::string& base_dir);
Json profile_to_json(const ChowProfile& p);
RegulatorAssembly assembly_from_json(const Json& j, const std::string& base_dir);

Scenario scenario_from_json(const Json& j, const std::string& base_dir);
Scenario load_scenario(const std::string& path);

ScenarioReport run_scenario(const Scenario& s, unsigned jobs = 0);
Json report_to_json(const ScenarioReport& r);

// Runs every file, prints a human-readable table to `out`, and returns the
// process exit code: 0 all matched, 1 some mismatch/error, 2 unreadable input.
int run_scenario_files(const std::vector<std::string>& paths, unsigned jobs,
                       std::ostream& out, std::vector<Json>* json_reports);

} // namespace zetareg

#endif
