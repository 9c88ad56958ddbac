#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcurve/curve.hpp"
#include "dcurve/parallel.hpp"

namespace dcurve {

/// One verification check, aggregated over its grid or sample count.
/// Informational rows never fail; they report measured deviations (for
/// example of printed split forms known to disagree) or mark skipped checks.
struct CheckResult {
    std::string suite;
    std::string curve;
    std::string name;
    int grid_n = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool informational = false;
    std::string note;
};

struct VerifyOptions {
    std::vector<std::string> suites;    // empty = all
    std::vector<CurveDef> curves;       // empty = builtin catalog
    std::optional<double> tol;          // overrides assertive tolerances
    int grid_n = 50;
    double c1 = 10.0;
    std::vector<double> c2_values = {0.0, 0.5};
    ExecMode mode = ExecMode::parallel;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool overall_pass() const;
};

const std::vector<std::string>& verify_suites();

VerificationReport run_verification(const VerifyOptions& opt = {});

}  // namespace dcurve
