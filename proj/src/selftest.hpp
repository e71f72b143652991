#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace stefanfront {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the acceptance criteria (all of them, or a single one when only_id is
/// 1..13). Each criterion is evaluated at its pinned tolerance; failures are
/// reported, never masked.
std::vector<CriterionResult> run_acceptance(int only_id = 0);

/// Convenience driver: runs the criteria, prints one PASS/FAIL line each to
/// `out`, and returns the number of failures.
int run_acceptance_suite(std::FILE* out, int only_id = 0);

}  // namespace stefanfront
