#pragma once

#include <string>
#include <vector>

namespace qnc::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// The full property suite; every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance();

bool all_pass(const std::vector<CriterionResult>& results);

} // namespace qnc::selftest
