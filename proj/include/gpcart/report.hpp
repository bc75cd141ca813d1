#pragma once

#include "json.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace gpcart {

enum class ClaimStatus { Pass, Fail, SkippedBudget, DiscrepancyDocumented };

std::string to_string(ClaimStatus status);

struct ClaimRecord {
    std::string id;
    std::string anchor;
    std::string parameters;
    std::string expected;
    std::string computed;
    ClaimStatus status = ClaimStatus::Fail;
    std::chrono::milliseconds elapsed{0};
};

struct VerificationReport {
    std::vector<ClaimRecord> claims;

    /// False iff some claim failed; skipped and documented claims do not fail.
    bool passed() const;
};

struct VerifyOptions {
    /// Skips the two torus exact searches (49 and 56 vertices).
    bool quick = false;
    unsigned threads = 1;
    /// Per-claim budget for exact searches.
    std::optional<std::chrono::milliseconds> time_limit;
    /// Restricts the run to these claim ids; empty runs every claim.
    std::vector<std::string> only;
};

/// Claim ids in report order; every report lists each exactly once.
const std::vector<std::string>& claim_ids();

VerificationReport verify_paper(const VerifyOptions& options);

nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace gpcart
