#ifndef MORDELL_VERIFY_HPP
#define MORDELL_VERIFY_HPP

#include <string>
#include <vector>

#include "mordell/quad.hpp"

namespace mordell {

struct CheckResult {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyReport {
    int schema_version = 1;
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = false;  // conjunction of all checks
    bool convergence_failure = false;
    double wall_time_s = 0.0;
};

struct VerifyOptions {
    double tol_scale = 1.0;  // multiplies every check tolerance
    unsigned long long seed = 12345;
    long max_evals = 10'000'000;
};

// suite in {"errfns", "onedim", "theorem", "all"}
VerifyReport run_verify_suite(const std::string& suite, const VerifyOptions& opts);

std::string verify_report_json(const VerifyReport& report);

}  // namespace mordell

#endif
