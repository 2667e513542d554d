// check_suite.hpp — the acceptance criteria as a runnable suite.  Each
// criterion bundles its sub-checks into CheckReports (every report states the
// claim it certifies) and enforces its runtime budget as a final sub-check.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpspec/report.hpp"

namespace lpspec::checks {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double runtime_ms = 0.0;
    std::vector<CheckReport> details;
};

inline constexpr int kNumCriteria = 12;

CriterionResult run_criterion(int id, std::uint64_t seed = 20240811u);
std::vector<CriterionResult> run_all(std::uint64_t seed = 20240811u);

// one line per criterion: "[PASS] criterion 3: ..." / "[FAIL] ..."
std::string summary_line(const CriterionResult& r);
std::string to_json(const std::vector<CriterionResult>& rs, bool with_runtime);

}  // namespace lpspec::checks
