#ifndef WITTLAB_SUITE_HPP
#define WITTLAB_SUITE_HPP

/// The verification suite: a configurable grid of property and oracle
/// checks over (p, truncation), grouped as
///   witt-axioms, unit-groups, endo-monoid, rigidity, splitting, cech-weights.
/// Every check is a pure function of (config, per-check seed); reports are
/// byte-deterministic for a fixed seed (timings are opt-in), and the run
/// fails exactly when some selected check fails.

#include "wittlab/ring.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace wittlab {

struct SuiteConfig {
    std::vector<long> primes{2, 3};
    std::vector<unsigned> witt_levels{2, 3, 4};
    unsigned pd_truncation = 2;        // fractional-exponent K
    std::int64_t cech_degree = 0;      // 0 means p^2 per prime
    unsigned cech_witt_level = 3;
    long ring_size_cap = 16;           // exhaustive roster cap (<= 64)
    long enumeration_cap = 65536;      // Witt-space enumeration cap
    std::vector<nlohmann::json> rings; // extra exhaustive-roster descriptors
    std::vector<std::string> groups;   // empty = all groups
    unsigned jobs = 1;
    std::uint64_t seed = 271828;
    std::string oracle = "none"; // none | ghost | enumerate
    std::string out_path;
    bool timings = false;

    /// Throws errc::config_invalid with a field-level diagnostic.
    static SuiteConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;
};

struct CheckResult {
    std::string id;
    std::string claim;
    nlohmann::json params;
    std::string status; // pass | fail | skipped
    nlohmann::json witness;
    double wall_ms = 0.0;
};

struct Report {
    SuiteConfig config;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::size_t count(const std::string& status) const;
    nlohmann::json to_json() const; // honors config.timings
    std::string serialize() const;  // stable indented form
};

const std::vector<std::string>& suite_group_names();

Report run_suite(const SuiteConfig& config);

} // namespace wittlab

#endif
