#pragma once

#include <string>
#include <vector>

// The acceptance checks behind `validate` and the acceptance test binary.
// Each criterion is a numbered bundle of sub-checks; a criterion passes
// only if every sub-check does.

namespace edtail {

struct CheckResult {
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string provenance;  // paper | derived | trivial
};

/// Run one numbered criterion (1..12).
std::vector<CheckResult> run_criterion(int k);

/// Criteria in a named suite: static, uniform, hyperbolic, maxwell,
/// ledger, or all. Throws invalid_argument on unknown names.
std::vector<int> suite_criteria(const std::string& suite);

/// Run a whole suite.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace edtail
