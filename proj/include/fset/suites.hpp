#ifndef FSET_SUITES_HPP
#define FSET_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fset/families.hpp"
#include "fset/fsets.hpp"

// Verification suites behind `fset verify <id>`: exhaustive and property
// checks at desk scale, each failure carrying a standalone reproduction
// command. Budgets come from FSET_BUDGET_MS; exceeding one records a skip,
// never a pass.

namespace fset {

struct RunConfig {
    std::vector<std::uint64_t> qs;  // empty: per-suite defaults
    unsigned horizon = 32;
    unsigned kmax = 6;
    std::uint64_t seed = kDefaultFactorSeed;
    std::uint64_t budget_ms = 0;  // 0: unlimited; normally from FSET_BUDGET_MS
};

struct SuiteFailure {
    std::string repro;   // standalone command reproducing the failure
    std::string detail;  // exact inputs and observed/expected values
};

struct SuiteResult {
    std::string suite;
    std::vector<std::uint64_t> qs;
    unsigned horizon = 0;
    unsigned kmax = 0;
    std::uint64_t seed = 0;
    std::uint64_t cases = 0;
    std::vector<SuiteFailure> failures;
    std::vector<std::string> skipped;  // budget-exceeded slices
    double wall_ms = 0.0;

    bool passed() const { return failures.empty() && skipped.empty(); }
};

const std::vector<std::string>& suite_ids();

// Throws DomainError for an unknown suite id.
SuiteResult run_suite(const std::string& id, const RunConfig& cfg);

}  // namespace fset

#endif
