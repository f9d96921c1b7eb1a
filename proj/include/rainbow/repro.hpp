#pragma once

// Registry of reproducible claim checks; each id maps to one acceptance criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/io.hpp"

namespace rainbow {

struct ClaimInfo {
    std::string id;
    int criterion = 0;
    std::string title;
    double limit_seconds = 0;
};

const std::vector<ClaimInfo>& claim_registry();

struct ReproRow {
    std::string check;
    bool pass = false;
    std::string detail;
};

struct ReproOptions {
    std::uint64_t seed = 20241015;
    int threads = 1;
};

struct ReproReport {
    ClaimInfo claim;
    std::vector<ReproRow> rows;
    double seconds = 0;

    bool checks_pass() const;
    bool within_time() const { return seconds <= claim.limit_seconds; }
    bool pass() const { return checks_pass() && within_time(); }
};

/// Throws std::invalid_argument for an unknown id.
ReproReport run_claim(const std::string& id, const ReproOptions& opts = {});

json to_json(const ReproReport& r);

}  // namespace rainbow
