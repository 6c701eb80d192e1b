#pragma once

// Explicit positive bound states of
//     u'' - k u + eps delta(x) u + 2u^3 - u^5 = 0
// together with the algebraic quantities that parametrize them.

#include <optional>
#include <string_view>
#include <utility>

namespace cqsoliton {

inline constexpr double kSqrt3 = 1.7320508075688772935;

/// Tolerance inside which k is treated as exactly 3/4 (front soliton).
inline constexpr double kFrontTolerance = 1e-12;

/// Radicands in [-kRadicandClamp, 0) are treated as zero.
inline constexpr double kRadicandClamp = 1e-12;

/// Strength eps of the attractive delta potential, 0 < eps < sqrt(3).
class CouplingStrength {
public:
    explicit CouplingStrength(double epsilon);
    double value() const noexcept { return epsilon_; }
    double squared() const noexcept { return epsilon_ * epsilon_; }

private:
    double epsilon_;
};

enum class Branch { Lower, Upper, Front, Fold };

std::string_view to_string(Branch b) noexcept;
/// Accepts lower/upper/front/fold (case-insensitive).
Branch parse_branch(std::string_view text);

/// k at which the two branches merge: 3/4 + eps^2/4.
double fold_point(CouplingStrength epsilon) noexcept;

/// Identifies one exact bound state. Construction validates the branch
/// admissibility ranges:
///   Lower: eps^2/4 < k <= kbar, k != 3/4 (use Front there)
///   Upper: 3/4 < k <= kbar
///   Front: k = 3/4,  Fold: k = kbar  (k is set by the factory)
class SolitonSpec {
public:
    SolitonSpec(CouplingStrength epsilon, double k, Branch branch);

    static SolitonSpec front(CouplingStrength epsilon);
    static SolitonSpec fold(CouplingStrength epsilon);

    CouplingStrength epsilon() const noexcept { return epsilon_; }
    double k() const noexcept { return k_; }
    Branch branch() const noexcept { return branch_; }

    /// True when the regime-B (3/4 < k <= kbar) formula describes the state.
    bool in_regime_b() const noexcept;

private:
    CouplingStrength epsilon_;
    double k_;
    Branch branch_;
};

enum class Side { Left, Right };

/// u(0)^2 = (3/2)(1 -+ sqrt(1 - (4/3)(k - eps^2/4))); '+' for Upper/Fold.
double peak_amplitude_squared(const SolitonSpec& spec);

/// (u~_-^2, u~_+^2) for 0 < k <= 3/4.
std::pair<double, double> tilde_bounds(double k);

/// Shift xi of the pinned regime-A soliton, eps^2/4 < k < 3/4.
double shift_xi(CouplingStrength epsilon, double k);

/// Integration constant c of the regime-B soliton from the explicit
/// radical expressions for e^{sqrt(k) c}. Branch must be Lower or Upper.
double integration_constant_c(CouplingStrength epsilon, double k, Branch branch);

/// Regime-A free-space soliton (eps = 0), 0 < k < 3/4.
double free_space_profile(double k, double x);

/// Precomputed closed-form solution. Evaluation is O(1) per point and
/// uses |x|, so the profile is exactly even.
class ClosedFormProfile {
public:
    explicit ClosedFormProfile(const SolitonSpec& spec);

    const SolitonSpec& spec() const noexcept { return spec_; }
    double peak_sq() const noexcept { return peak_sq_; }
    /// Present only for Lower with k < 3/4.
    std::optional<double> shift_xi() const noexcept { return shift_xi_; }
    /// Present only in regime B.
    std::optional<double> integ_const_c() const noexcept { return integ_const_c_; }
    double decay_rate() const noexcept { return decay_rate_; }

    double value_squared(double x) const noexcept;
    long double value_squared_extended(double x) const noexcept;
    double value(double x) const noexcept;
    /// u'(x) for x != 0 via the separated first-order equation.
    double derivative(double x) const;
    /// One-sided derivative u'(0+) or u'(0-).
    double derivative_at_origin(Side side) const;

private:
    enum class Form { PinnedA, EulerB, FrontSoliton, FoldSoliton };

    double derivative_from_value(double u, double sign) const;

    SolitonSpec spec_;
    Form form_;
    double peak_sq_;
    std::optional<double> shift_xi_;
    std::optional<double> integ_const_c_;
    double decay_rate_;

    // Form-specific coefficients.
    // Kept in extended precision so that evaluations round once at the end.
    long double log_shift_ = 0;   // PinnedA: 2 sqrt(k) xi
    long double s_ = 0;           // PinnedA: sqrt(1 - 4k/3)
    long double y0_ = 0;          // EulerB: e^{-2 sqrt(k) c}
    long double a_ = 0, b_ = 0;   // EulerB: 2 sqrt(k/3) +- 1
    long double ratio_ = 0;       // Front: eps / (sqrt3 - eps)
};

double eval_profile(const SolitonSpec& spec, double x);

/// Throws DomainError at x == 0; use the Side overload there.
double eval_derivative(const SolitonSpec& spec, double x);
double eval_derivative(const SolitonSpec& spec, Side side_at_origin);

/// (u')^2 - k u^2 + u^4 - u^6/3 at x != 0.
double first_integral_residual(const SolitonSpec& spec, double x);
/// Same expression for arbitrary values of u and u'.
double first_integral_residual(double k, double u, double du) noexcept;

}  // namespace cqsoliton
