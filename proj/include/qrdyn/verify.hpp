#pragma once

#include <string>
#include <vector>

namespace qrdyn {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0.0;
};

/// The acceptance checks, each pinned to its stated tolerance and runtime
/// budget. Numbered 1..10.
CheckResult criterion_zorich_constants();
CheckResult criterion_automorphy_inversion();
CheckResult criterion_map_regimes();
CheckResult criterion_order_of_growth();
CheckResult criterion_metrics();
CheckResult criterion_covering();
CheckResult criterion_hemisphere();
CheckResult criterion_inverse_problem();
CheckResult criterion_min_modulus_checker();
CheckResult criterion_dilatation();

std::vector<CheckResult> acceptance_criteria();

/// Named suite for the command line: zorich, metrics, covering, growth,
/// directions, or all.
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace qrdyn
