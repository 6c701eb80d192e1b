#include "cqsoliton/closed_form.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cqsoliton/errors.hpp"

namespace cqsoliton {
namespace {

using real = long double;

constexpr real kSqrt3L = 1.7320508075688772935274463415058723669L;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double clamped_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandClamp || std::isnan(radicand)) {
        throw DomainError(std::string(what) + ": negative radicand " + fmt(radicand));
    }
    return std::sqrt(std::max(radicand, 0.0));
}

real clamped_sqrt(real radicand) { return std::sqrt(std::max(radicand, real(0))); }

bool is_three_quarters(double k) { return std::abs(k - 0.75) < kFrontTolerance; }

// sqrt(k) - eps/2 without cancellation near the bifurcation point.
real root_gap(real k, real eps) { return (k - eps * eps / 4) / (std::sqrt(k) + eps / 2); }

real log_pinning_factor(real eps, real k) {
    const real s = std::sqrt(1 - 4 * k / 3);
    const real num = eps + std::sqrt(eps * eps + (4 * k - eps * eps) * s * s);
    const real den = 2 * root_gap(k, eps) * s;
    return std::log(num) - std::log(den);
}

}  // namespace

CouplingStrength::CouplingStrength(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < kSqrt3)) {
        throw DomainError("epsilon must lie in (0, sqrt(3)), got " + fmt(epsilon));
    }
}

std::string_view to_string(Branch b) noexcept {
    switch (b) {
        case Branch::Lower: return "lower";
        case Branch::Upper: return "upper";
        case Branch::Front: return "front";
        case Branch::Fold: return "fold";
    }
    return "?";
}

Branch parse_branch(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "lower") return Branch::Lower;
    if (t == "upper") return Branch::Upper;
    if (t == "front") return Branch::Front;
    if (t == "fold") return Branch::Fold;
    throw DomainError("unknown branch '" + std::string(text) + "' (expected lower|upper|front|fold)");
}

double fold_point(CouplingStrength epsilon) noexcept { return 0.75 + epsilon.squared() / 4.0; }

SolitonSpec::SolitonSpec(CouplingStrength epsilon, double k, Branch branch)
    : epsilon_(epsilon), k_(k), branch_(branch) {
    const double threshold = epsilon.squared() / 4.0;
    const double kbar = fold_point(epsilon);
    if (!std::isfinite(k)) throw DomainError("k must be finite");
    // Accept k a few ulps above kbar so that fold_point(eps) itself is valid.
    if (k > kbar && k - kbar < 4 * std::numeric_limits<double>::epsilon()) k_ = k = kbar;

    switch (branch) {
        case Branch::Lower:
            if (!(k > threshold && k <= kbar)) {
                throw DomainError("k must lie in (eps^2/4, 3/4 + eps^2/4] = (" + fmt(threshold) + ", " +
                                  fmt(kbar) + "] for branch lower, got " + fmt(k));
            }
            if (is_three_quarters(k)) {
                throw DomainError("k = 3/4 on the lower branch is the front soliton; use branch front");
            }
            break;
        case Branch::Upper:
            if (!(k > 0.75 && k <= kbar) || is_three_quarters(k)) {
                throw DomainError("k must lie in (3/4, 3/4 + eps^2/4] = (0.75, " + fmt(kbar) +
                                  "] for branch upper, got " + fmt(k));
            }
            break;
        case Branch::Front:
            if (!is_three_quarters(k)) throw DomainError("branch front requires k = 3/4, got " + fmt(k));
            k_ = 0.75;
            break;
        case Branch::Fold:
            if (std::abs(k - kbar) > 1e-12) {
                throw DomainError("branch fold requires k = 3/4 + eps^2/4 = " + fmt(kbar) + ", got " + fmt(k));
            }
            k_ = kbar;
            break;
    }
}

SolitonSpec SolitonSpec::front(CouplingStrength epsilon) { return {epsilon, 0.75, Branch::Front}; }

SolitonSpec SolitonSpec::fold(CouplingStrength epsilon) { return {epsilon, fold_point(epsilon), Branch::Fold}; }

bool SolitonSpec::in_regime_b() const noexcept {
    return (branch_ == Branch::Lower || branch_ == Branch::Upper) && k_ > 0.75;
}

double peak_amplitude_squared(const SolitonSpec& spec) {
    const double eps = spec.epsilon().value();
    const double z = (4.0 / 3.0) * (spec.k() - eps * eps / 4.0);
    // 1 - z written as a distance to the fold, so k = k-bar gives an exact zero.
    const double root = clamped_sqrt((4.0 / 3.0) * (fold_point(spec.epsilon()) - spec.k()), "peak_amplitude_squared");
    switch (spec.branch()) {
        case Branch::Lower:
        case Branch::Front:
            // 1 - sqrt(1 - z) rationalized; z -> 0 at the bifurcation point.
            return 1.5 * z / (1.0 + root);
        case Branch::Upper:
        case Branch::Fold:
            return 1.5 * (1.0 + root);
    }
    return 0.0;
}

std::pair<double, double> tilde_bounds(double k) {
    if (!(k > 0.0 && k <= 0.75)) {
        throw DomainError("tilde_bounds requires 0 < k <= 3/4, got " + fmt(k));
    }
    const double z = 4.0 * k / 3.0;
    const double root = clamped_sqrt(1.0 - z, "tilde_bounds");
    return {1.5 * z / (1.0 + root), 1.5 * (1.0 + root)};
}

double shift_xi(CouplingStrength epsilon, double k) {
    const double eps = epsilon.value();
    if (!(k > eps * eps / 4.0 && k < 0.75)) {
        throw DomainError("shift_xi requires eps^2/4 < k < 3/4, got k = " + fmt(k));
    }
    return static_cast<double>(log_pinning_factor(eps, k) / (2 * std::sqrt(real(k))));
}

double integration_constant_c(CouplingStrength epsilon, double k, Branch branch) {
    const double eps = epsilon.value();
    const double kbar = fold_point(epsilon);
    if (!(k > 0.75 && k <= kbar) || is_three_quarters(k)) {
        throw DomainError("integration_constant_c requires 3/4 < k <= 3/4 + eps^2/4, got k = " + fmt(k));
    }
    if (branch != Branch::Lower && branch != Branch::Upper) {
        throw DomainError("integration_constant_c is defined for branches lower and upper only");
    }
    const real sk = std::sqrt(real(k));
    const real e = eps;
    const real r = clamped_sqrt(3.0 + eps * eps - 4.0 * k, "integration_constant_c");
    real num = 0;
    real den = 0;
    if (branch == Branch::Lower) {
        num = 3 - kSqrt3L * r + 2 * e * sk - 4 * real(k);
        den = -3 + kSqrt3L * r + 2 * kSqrt3L * sk - 2 * sk * r;
    } else {
        num = -3 - kSqrt3L * r - 2 * e * sk + 4 * real(k);
        den = 3 + kSqrt3L * r - 2 * kSqrt3L * sk - 2 * sk * r;
    }
    const real ratio = num / den;
    if (!(ratio > 0) || !std::isfinite(static_cast<double>(ratio))) {
        throw DomainError("integration_constant_c: non-positive radicand for (eps, k) = (" + fmt(eps) + ", " +
                          fmt(k) + ")");
    }
    return static_cast<double>(std::log(ratio) / (2 * sk));
}

double free_space_profile(double k, double x) {
    if (!(k > 0.0 && k < 0.75)) {
        throw DomainError("free_space_profile requires 0 < k < 3/4, got " + fmt(k));
    }
    const real kk = k;
    const real s = std::sqrt(1 - 4 * kk / 3);
    const real q = std::exp(-2 * std::sqrt(kk) * std::abs(real(x)));
    return static_cast<double>(std::sqrt(2 * kk * q / (q + s / 2 * (1 + q * q))));
}

ClosedFormProfile::ClosedFormProfile(const SolitonSpec& spec)
    : spec_(spec), form_(Form::PinnedA), peak_sq_(peak_amplitude_squared(spec)), decay_rate_(std::sqrt(spec.k())) {
    const real eps = spec.epsilon().value();
    const real k = spec.k();
    switch (spec.branch()) {
        case Branch::Front:
            form_ = Form::FrontSoliton;
            ratio_ = eps / (kSqrt3L - eps);
            return;
        case Branch::Fold:
            form_ = Form::FoldSoliton;
            return;
        case Branch::Lower:
        case Branch::Upper:
            break;
    }
    if (!spec.in_regime_b()) {
        form_ = Form::PinnedA;
        s_ = std::sqrt(1 - 4 * k / 3);
        log_shift_ = log_pinning_factor(eps, k);
        shift_xi_ = static_cast<double>(log_shift_ / (2 * std::sqrt(k)));
        return;
    }

    // Anchor the Euler-substitution form on its peak value: y0 is the unique
    // positive root of a u0^2 y^2 + (2u0^2 - 4k) y - b u0^2 = 0.
    form_ = Form::EulerB;
    const real s = std::sqrt(k / 3);
    a_ = 2 * s + 1;
    b_ = 2 * s - 1;
    const real z = real(4) / 3 * (k - eps * eps / 4);
    const real root = clamped_sqrt(real(4) / 3 * (real(fold_point(spec.epsilon())) - k));
    const real u0sq = spec.branch() == Branch::Lower ? real(1.5) * z / (1 + root) : real(1.5) * (1 + root);
    const real lin = 2 * u0sq - 4 * k;
    const real disc = std::sqrt(lin * lin + 4 * a_ * b_ * u0sq * u0sq);
    y0_ = lin <= 0 ? (disc - lin) / (2 * a_ * u0sq) : 2 * b_ * u0sq / (lin + disc);
    integ_const_c_ = static_cast<double>(-std::log(y0_) / (2 * std::sqrt(k)));
}

long double ClosedFormProfile::value_squared_extended(double x) const noexcept {
    const real ax = std::abs(real(x));
    const real k = spec_.k();
    switch (form_) {
        case Form::PinnedA: {
            const real q = std::exp(-std::abs(2 * std::sqrt(k) * ax + log_shift_));
            return 2 * k * q / (q + s_ / 2 * (1 + q * q));
        }
        case Form::EulerB: {
            const real w = std::exp(-2 * std::sqrt(k) * ax) / y0_;
            return 4 * k * w / ((1 + w) * (a_ - b_ * w));
        }
        case Form::FrontSoliton: {
            const real e = std::exp(-kSqrt3L * ax);
            return real(1.5) * e / (e + ratio_);
        }
        case Form::FoldSoliton: {
            const real eps = spec_.epsilon().value();
            const real m2 = 3 + eps * eps;
            const real m = std::sqrt(m2);
            const real e = std::exp(-m * ax);
            const real den = 3 * e + eps * eps * (1 + e * e) / 2 + eps * m * (1 - e * e) / 2;
            return real(1.5) * m2 * e / den;
        }
    }
    return 0;
}

double ClosedFormProfile::value_squared(double x) const noexcept {
    return static_cast<double>(value_squared_extended(x));
}

double ClosedFormProfile::value(double x) const noexcept {
    return static_cast<double>(std::sqrt(value_squared_extended(x)));
}

double ClosedFormProfile::derivative_from_value(double u, double sign) const {
    const double radicand = u * u * u * u / 3.0 - u * u + spec_.k();
    return -sign * u * clamped_sqrt(radicand, "eval_derivative");
}

double ClosedFormProfile::derivative(double x) const {
    if (x == 0.0) {
        throw DomainError("u'(0) does not exist; request a one-sided derivative at the origin");
    }
    return derivative_from_value(value(x), x > 0.0 ? 1.0 : -1.0);
}

double ClosedFormProfile::derivative_at_origin(Side side) const {
    return derivative_from_value(value(0.0), side == Side::Right ? 1.0 : -1.0);
}

double eval_profile(const SolitonSpec& spec, double x) { return ClosedFormProfile(spec).value(x); }

double eval_derivative(const SolitonSpec& spec, double x) { return ClosedFormProfile(spec).derivative(x); }

double eval_derivative(const SolitonSpec& spec, Side side_at_origin) {
    return ClosedFormProfile(spec).derivative_at_origin(side_at_origin);
}

double first_integral_residual(double k, double u, double du) noexcept {
    const double u2 = u * u;
    return du * du - k * u2 + u2 * u2 - u2 * u2 * u2 / 3.0;
}

double first_integral_residual(const SolitonSpec& spec, double x) {
    const ClosedFormProfile profile(spec);
    return first_integral_residual(spec.k(), profile.value(x), profile.derivative(x));
}

}  // namespace cqsoliton
