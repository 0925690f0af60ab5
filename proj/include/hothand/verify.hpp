#pragma once

#include <string>
#include <vector>

namespace hothand {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Desk-scale invariant battery behind `hothand verify`: closed form vs enumeration,
/// the reciprocal-moment recursion, DP vs enumeration, the k = 1 bias and AM-GM
/// grid, the per-term decomposition, k in {2,3} bias, simulator determinism.
std::vector<CheckResult> run_verification_battery();

} // namespace hothand
