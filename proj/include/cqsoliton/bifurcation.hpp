#pragma once

// Masses (L2 norms), exact mass slopes and the full solution curve
//   S = S_lower U {fold} U S_upper.

#include <vector>

#include "cqsoliton/closed_form.hpp"
#include "cqsoliton/errors.hpp"

namespace cqsoliton {

struct BifurcationSample {
    double k = 0.0;
    double mass = 0.0;           // ||u||_{L2}
    double mass_sq_slope = 0.0;  // d||u||^2/dk; infinite at the fold
    Branch branch = Branch::Lower;
};

/// Samples ordered along the curve: lower branch by increasing k, the fold,
/// then the upper branch by decreasing k.
struct CurveTrace {
    CouplingStrength epsilon;
    std::vector<BifurcationSample> samples;
};

/// phi_eps(k) with ||u_lower||^2 = sqrt(3) log phi for k < 3/4. Accepts
/// eps >= 0 (eps = 0 gives the free-space family) and eps^2/4 <= k < 3/4.
double mass_function_phi(double epsilon, double k);
double mass_function_phi_derivative(double epsilon, double k);

/// ||u||^2: closed form below k = 3/4, certified quadrature otherwise.
double mass_squared(const SolitonSpec& spec);
double mass(const SolitonSpec& spec);

/// ||u||^2 of the free-space soliton, 0 < k < 3/4.
double free_space_mass_squared(double k);

/// d||u||^2/dk from the explicit slope formulas. Rejects k = 3/4 and
/// k = kbar where the slope is singular.
double mass_sq_slope(const SolitonSpec& spec);

/// Common one-sided limit sqrt(3)(1/eps^2 + 1/3) of the lower slope at 3/4.
double slope_limit_at_three_quarters(CouplingStrength epsilon) noexcept;

/// Endpoint guard 1e-6 (kbar - eps^2/4) used when tracing.
double curve_guard(CouplingStrength epsilon) noexcept;

/// n_samples >= 8 points: roughly half on each branch plus the fold. Upper
/// samples are log-spaced in k - 3/4 to resolve the blow-up.
CurveTrace trace_curve(CouplingStrength epsilon, int n_samples);

/// The eps = 0 curve on (0, 3/4); there is no upper branch.
std::vector<BifurcationSample> trace_free_space_curve(int n_samples);

class MassRangeError : public DomainError {
public:
    MassRangeError(const std::string& what, double fold_mass) : DomainError(what), fold_mass_(fold_mass) {}
    double fold_mass() const noexcept { return fold_mass_; }

private:
    double fold_mass_;
};

/// k on the given branch (Lower or Upper) with mass(k) = target_mass.
double solve_k_for_mass(CouplingStrength epsilon, double target_mass, Branch branch);

}  // namespace cqsoliton
