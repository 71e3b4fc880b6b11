#pragma once

#include <string>
#include <vector>

namespace minlen::validation {

struct ValidationOptions {
    /// Gauss-Laguerre points used by every quadrature-based check.
    int quadrature_points = 64;
    /// Debug hook: adds kappa * beta^2 m^2 E0^3 to the shift-integral route.
    double inject_beta2 = 0.0;
};

enum class Comparison { AtMost, AtLeast };

struct CheckResult {
    std::string name;
    std::string description;
    double tolerance = 0.0;
    double observed = 0.0;
    Comparison comparison = Comparison::AtMost;
    bool passed = false;
    std::string note;
};

/// Runs the identity, route-equivalence, structural, solver and bounds checks.
/// Route checks use reduced units (m = 1) with beta chosen so beta m |E0| ~ 1e-2,
/// which makes any injected second-order term visible.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

} // namespace minlen::validation
