#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlcsec/experiments.hpp"

namespace vlcsec {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // worst observed deviation
    double limit = 0.0;  // allowed ceiling for `worst`
    std::string detail;  // parameters at the worst case
};

struct SelfcheckReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

// Cross-validation suites: shape-equation solver residual and antisymmetry,
// closed-form moments against adaptive quadrature, assembled against literal
// bound expressions, frozen high-intensity constants, and post-clamp bound
// ordering on randomized links. Deterministic for a fixed seed.
SelfcheckReport run_selfcheck(std::uint64_t seed = kDefaultSeed, std::size_t draws = 100);

std::string format_report(const SelfcheckReport& report);

}  // namespace vlcsec
