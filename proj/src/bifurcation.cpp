#include "cqsoliton/bifurcation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cqsoliton/parallel.hpp"
#include "cqsoliton/quadrature.hpp"

namespace cqsoliton {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTailTolerance = 1e-14;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct PhiParts {
    double root;  // sqrt(3 eps^2 + (4k - eps^2)(3 - 4k))
    double gap;   // 2 sqrt(k) - eps
    double den;
};

PhiParts phi_parts(double eps, double k) {
    if (!(eps >= 0.0) || !(k >= eps * eps / 4.0 && k < 0.75)) {
        throw DomainError("mass_function_phi requires eps >= 0 and eps^2/4 <= k < 3/4, got k = " + fmt(k));
    }
    const double sk = std::sqrt(k);
    const double root = std::sqrt(3.0 * eps * eps + (4.0 * k - eps * eps) * (3.0 - 4.0 * k));
    const double gap = (4.0 * k - eps * eps) / (2.0 * sk + eps);
    const double den = kSqrt3 * eps + root + (kSqrt3 - 2.0 * sk) * gap;
    return {root, gap, den};
}

double quadrature_mass_squared(const SolitonSpec& spec) {
    const ClosedFormProfile profile(spec);
    const double k = spec.k();
    auto integrand = [&](double x) { return profile.value_squared(x); };
    // For x >= X, u'/u <= -sqrt(k - u(X)^2), so the tail of u^2 is bounded by
    // u(X)^2 / (2 sqrt(k - u(X)^2)).
    auto tail = [&](double x) {
        const double u2 = profile.value_squared(x);
        return u2 < k ? u2 / (2.0 * std::sqrt(k - u2)) : kInf;
    };
    std::vector<double> breaks;
    double cutoff = 40.0 / std::sqrt(k);
    if (auto c = profile.integ_const_c(); c && *c > 0.0) {
        breaks.push_back(*c);
        cutoff += *c;
    }
    const auto half = integrate_half_line(integrand, cutoff, tail, kTailTolerance, breaks);
    return 2.0 * half.value;
}

double upper_mass_at_offset(CouplingStrength epsilon, double offset) {
    return mass(SolitonSpec(epsilon, 0.75 + offset, Branch::Upper));
}

}  // namespace

double mass_function_phi(double epsilon, double k) {
    const auto p = phi_parts(epsilon, k);
    return 1.0 + 4.0 * std::sqrt(k) * p.gap / p.den;
}

double mass_function_phi_derivative(double epsilon, double k) {
    const auto p = phi_parts(epsilon, k);
    const double sk = std::sqrt(k);
    const double num = kSqrt3 * p.root + 2.0 * sk * (3.0 + epsilon * epsilon - 2.0 * epsilon * sk);
    return 8.0 * sk * num / (p.root * p.den * p.den);
}

double mass_squared(const SolitonSpec& spec) {
    const double k = spec.k();
    if (spec.branch() == Branch::Lower && k < 0.75) {
        const auto p = phi_parts(spec.epsilon().value(), k);
        // log phi = log1p(phi - 1) keeps full precision near the bifurcation point.
        return kSqrt3 * std::log1p(4.0 * std::sqrt(k) * p.gap / p.den);
    }
    return quadrature_mass_squared(spec);
}

double mass(const SolitonSpec& spec) { return std::sqrt(mass_squared(spec)); }

double free_space_mass_squared(double k) {
    if (!(k > 0.0 && k < 0.75)) throw DomainError("free-space solitons require 0 < k < 3/4, got " + fmt(k));
    return kSqrt3 * std::log(mass_function_phi(0.0, k));
}

double mass_sq_slope(const SolitonSpec& spec) {
    const double eps = spec.epsilon().value();
    const double k = spec.k();
    const double kbar = fold_point(spec.epsilon());
    if (spec.branch() == Branch::Front || spec.branch() == Branch::Fold || k == kbar) {
        throw DomainError("mass_sq_slope is singular at k = 3/4 and k = kbar");
    }
    if (k < 0.75) {
        return kSqrt3 * mass_function_phi_derivative(eps, k) / mass_function_phi(eps, k);
    }
    const double r = std::sqrt(3.0 + eps * eps - 4.0 * k);
    const double delta_term = 2.0 * kSqrt3 * eps / r;
    const double decay_term = 3.0 / std::sqrt(k);
    if (spec.branch() == Branch::Lower) return (delta_term - decay_term) / (4.0 * k - 3.0);
    return -(delta_term + decay_term) / (4.0 * k - 3.0);
}

double slope_limit_at_three_quarters(CouplingStrength epsilon) noexcept {
    return kSqrt3 * (1.0 / epsilon.squared() + 1.0 / 3.0);
}

double curve_guard(CouplingStrength epsilon) noexcept {
    return 1e-6 * (fold_point(epsilon) - epsilon.squared() / 4.0);
}

CurveTrace trace_curve(CouplingStrength epsilon, int n_samples) {
    if (n_samples < 8) throw DomainError("trace_curve needs at least 8 samples");
    const double kbar = fold_point(epsilon);
    const double threshold = epsilon.squared() / 4.0;
    const double guard = curve_guard(epsilon);

    const int remaining = n_samples - 1;
    const int n_lower = (remaining + 1) / 2;
    const int n_upper = remaining - n_lower;

    std::vector<SolitonSpec> specs;
    specs.reserve(static_cast<std::size_t>(n_samples));
    const double lower_lo = threshold + guard;
    const double lower_hi = kbar - guard;
    for (int i = 0; i < n_lower; ++i) {
        const double k = lower_lo + (lower_hi - lower_lo) * i / (n_lower - 1);
        if (std::abs(k - 0.75) < kFrontTolerance) {
            specs.push_back(SolitonSpec::front(epsilon));
        } else {
            specs.emplace_back(epsilon, k, Branch::Lower);
        }
    }
    specs.push_back(SolitonSpec::fold(epsilon));
    const double top = kbar - guard - 0.75;
    for (int i = 0; i < n_upper; ++i) {
        const double t = n_upper == 1 ? 0.0 : static_cast<double>(i) / (n_upper - 1);
        specs.emplace_back(epsilon, 0.75 + top * std::pow(guard / top, t), Branch::Upper);
    }

    CurveTrace trace{epsilon, std::vector<BifurcationSample>(specs.size())};
    parallel_for(specs.size(), [&](std::size_t i) {
        const auto& spec = specs[i];
        double slope = 0.0;
        switch (spec.branch()) {
            case Branch::Fold: slope = kInf; break;
            case Branch::Front: slope = slope_limit_at_three_quarters(epsilon); break;
            default: slope = mass_sq_slope(spec); break;
        }
        trace.samples[i] = {spec.k(), mass(spec), slope, spec.branch()};
    });
    return trace;
}

std::vector<BifurcationSample> trace_free_space_curve(int n_samples) {
    if (n_samples < 8) throw DomainError("trace_free_space_curve needs at least 8 samples");
    std::vector<BifurcationSample> out;
    const double guard = 0.75e-6;
    for (int i = 0; i < n_samples; ++i) {
        const double k = guard + (0.75 - 2 * guard) * i / (n_samples - 1);
        const double slope = kSqrt3 * mass_function_phi_derivative(0.0, k) / mass_function_phi(0.0, k);
        out.push_back({k, std::sqrt(free_space_mass_squared(k)), slope, Branch::Lower});
    }
    return out;
}

double solve_k_for_mass(CouplingStrength epsilon, double target_mass, Branch branch) {
    if (branch != Branch::Lower && branch != Branch::Upper) {
        throw DomainError("solve_k_for_mass supports branches lower and upper only");
    }
    if (!(target_mass > 0.0) || !std::isfinite(target_mass)) {
        throw DomainError("target mass must be positive and finite");
    }
    const double kbar = fold_point(epsilon);
    const double fold_mass = mass(SolitonSpec::fold(epsilon));

    auto mass_at = [&](double k) {
        if (k >= kbar) return fold_mass;
        if (std::abs(k - 0.75) < kFrontTolerance) return mass(SolitonSpec::front(epsilon));
        return mass(SolitonSpec(epsilon, k, branch));
    };

    // mass is increasing in k on the lower branch and decreasing on the upper one.
    const double orientation = branch == Branch::Lower ? 1.0 : -1.0;
    double lo = 0.0;
    double hi = kbar;
    if (branch == Branch::Lower) {
        if (target_mass > fold_mass) {
            throw MassRangeError("target mass " + fmt(target_mass) + " exceeds the lower-branch range (0, " +
                                     fmt(fold_mass) + "]; the fold mass is " + fmt(fold_mass),
                                 fold_mass);
        }
        lo = epsilon.squared() / 4.0;
    } else {
        if (target_mass < fold_mass) {
            throw MassRangeError("target mass " + fmt(target_mass) + " is below the upper-branch range [" +
                                     fmt(fold_mass) + ", inf); the fold mass is " + fmt(fold_mass),
                                 fold_mass);
        }
        double offset = 0.5 * (kbar - 0.75);
        while (upper_mass_at_offset(epsilon, offset) < target_mass) {
            offset *= 1e-2;
            if (offset < 1e-15) {
                throw MassRangeError("target mass " + fmt(target_mass) +
                                         " is not resolvable in double precision near k = 3/4",
                                     fold_mass);
            }
        }
        lo = 0.75 + offset;
    }
    if (target_mass == fold_mass) return kbar;

    // Invariant: orientation * (mass(lo) - target) <= 0 <= orientation * (mass(hi) - target).
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (orientation * (mass_at(mid) - target_mass) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Newton polish with the exact slope: d mass/dk = slope / (2 mass).
    double k = 0.5 * (lo + hi);
    double residual = mass_at(k) - target_mass;
    for (int it = 0; it < 3 && residual != 0.0; ++it) {
        if (k >= kbar || std::abs(k - 0.75) < kFrontTolerance) break;
        const SolitonSpec spec(epsilon, k, branch);
        const double dmass = mass_sq_slope(spec) / (2.0 * (residual + target_mass));
        if (!std::isfinite(dmass) || dmass == 0.0) break;
        const double candidate = k - residual / dmass;
        if (!(candidate > lo - 1e-12 && candidate < hi + 1e-12) || candidate > kbar) break;
        const double candidate_residual = mass_at(candidate) - target_mass;
        if (std::abs(candidate_residual) >= std::abs(residual)) break;
        k = candidate;
        residual = candidate_residual;
    }
    return k;
}

}  // namespace cqsoliton
