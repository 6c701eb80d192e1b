#pragma once

// Self-check suite over the invariants of every module.

#include <functional>
#include <string>
#include <vector>

#include "cqsoliton/closed_form.hpp"

namespace cqsoliton {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst observed deviation (or violation count)
    double tolerance = 0.0;  // passes when measured <= tolerance
};

/// Seams that let tests substitute a component and confirm the suite notices.
struct ValidationHooks {
    /// One-sided derivative at 0 used by the jump-condition check.
    std::function<double(const ClosedFormProfile&, Side)> origin_derivative =
        [](const ClosedFormProfile& p, Side s) { return p.derivative_at_origin(s); };
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const noexcept;
};

ValidationReport run_validation(const ValidationHooks& hooks = {});

}  // namespace cqsoliton
