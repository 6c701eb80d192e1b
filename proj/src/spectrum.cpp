#include "cqsoliton/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cqsoliton/bifurcation.hpp"
#include "cqsoliton/errors.hpp"
#include "cqsoliton/quadrature.hpp"

namespace cqsoliton {
namespace {

constexpr std::size_t kMaxEigenvalues = 10;
constexpr double kEigenTolerance = 1e-11;

std::vector<double> sample_profile(const SolitonSpec& spec, const Grid& grid) {
    const ClosedFormProfile profile(spec);
    std::vector<double> u(grid.nodes());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = profile.value(grid.x(j));
    return u;
}

}  // namespace

LinearizedOperator assemble_operator(const SolitonSpec& spec, const Grid& grid) {
    const auto u = sample_profile(spec, grid);
    return assemble_operator(spec, grid, u);
}

SymmetricTridiagonal assemble_matrix(double k, double epsilon, const Grid& grid, std::span<const double> profile) {
    if (profile.size() != grid.nodes()) {
        throw DomainError("profile needs " + std::to_string(grid.nodes()) + " values, got " +
                          std::to_string(profile.size()));
    }
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    const std::size_t n = grid.intervals() - 1;
    SymmetricTridiagonal t;
    t.diagonal.resize(n);
    t.off_diagonal.assign(n - 1, -inv_h2);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = profile[i + 1] * profile[i + 1];
        t.diagonal[i] = 2.0 * inv_h2 + k - (6.0 - 5.0 * s) * s;
    }
    t.diagonal[grid.j0() - 1] -= epsilon / h;
    t.check();
    return t;
}

LinearizedOperator assemble_operator(const SolitonSpec& spec, const Grid& grid, std::span<const double> profile) {
    return LinearizedOperator{grid, spec, assemble_matrix(spec.k(), spec.epsilon().value(), grid, profile)};
}

std::vector<double> lowest_eigenvalues(const LinearizedOperator& op, std::size_t m) {
    if (m == 0 || m > kMaxEigenvalues) {
        throw DomainError("number of eigenvalues must be in [1, " + std::to_string(kMaxEigenvalues) + "]");
    }
    return lowest_eigenvalues(op.matrix, m, kEigenTolerance);
}

double zero_tolerance(const Grid& grid) noexcept { return 10.0 * grid.h() * grid.h(); }

std::size_t morse_index(const LinearizedOperator& op) { return sturm_count(op.matrix, -zero_tolerance(op.grid)); }

std::size_t morse_index(const SolitonSpec& spec, const Grid& grid) { return morse_index(assemble_operator(spec, grid)); }

namespace {

SpectrumReport report_for(const LinearizedOperator& op, std::size_t m) {
    SpectrumReport r;
    r.eigenvalues = lowest_eigenvalues(op, m);
    r.morse_index = morse_index(op);
    r.zero_mode_gap = std::abs(r.eigenvalues.front());
    for (double v : r.eigenvalues) r.zero_mode_gap = std::min(r.zero_mode_gap, std::abs(v));
    return r;
}

}  // namespace

SpectrumReport spectrum_report(const SolitonSpec& spec, const Grid& grid, std::size_t m) {
    return report_for(assemble_operator(spec, grid), m);
}

SpectrumReport fold_kernel_check(CouplingStrength epsilon, const Grid& grid) {
    const auto spec = SolitonSpec::fold(epsilon);
    const auto op = assemble_operator(spec, grid);
    auto report = report_for(op, 3);

    auto v = inverse_iteration(op.matrix, report.eigenvalues.front());
    const auto peak = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*peak < 0.0) {
        for (double& x : v) x = -x;
    }

    const ClosedFormProfile profile(spec);
    double dot = 0.0;
    double eta_sq = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t j = i + 1;
        const double eta = j == grid.j0() ? std::abs(profile.derivative_at_origin(Side::Right))
                                          : std::abs(profile.derivative(grid.x(j)));
        dot += v[i] * eta;
        eta_sq += eta * eta;
    }
    report.kernel_overlap = eta_sq > 0.0 ? std::clamp(dot / std::sqrt(eta_sq), 0.0, 1.0) : 0.0;
    return report;
}

FIntegral f_integral(CouplingStrength epsilon, double rel_tol) {
    const auto spec = SolitonSpec::fold(epsilon);
    const ClosedFormProfile profile(spec);
    const double k = spec.k();
    auto integrand = [&](double x) {
        if (x == 0.0) {
            const double u = profile.value(0.0);
            const double du = std::abs(profile.derivative_at_origin(Side::Right));
            return (5.0 * u * u - 3.0) * u * du * du * du;
        }
        const double u = profile.value(x);
        const double du = std::abs(profile.derivative(x));
        return (5.0 * u * u - 3.0) * u * du * du * du;
    };
    // Where u^2 < min(k, 6/5): |5u^2 - 3| <= 3, |u'| <= sqrt(k) u and u decays at
    // least like exp(-sqrt(k - u(X)^2)(x - X)), so the tail is at most
    // 3 k^{3/2} u(X)^4 / (4 sqrt(k - u(X)^2)).
    auto tail = [&](double x) {
        const double u2 = profile.value_squared(x);
        if (!(u2 < k && u2 < 1.2)) return std::numeric_limits<double>::infinity();
        return 3.0 * k * std::sqrt(k) * u2 * u2 / (4.0 * std::sqrt(k - u2));
    };
    const auto half = integrate_half_line(integrand, 40.0 / std::sqrt(k), tail, 5e-13, {}, rel_tol);
    return {2.0 * half.value, 2.0 * half.error_bound};
}

std::string_view to_string(Mechanism m) noexcept {
    switch (m) {
        case Mechanism::PositiveSpectrum: return "PositiveSpectrum";
        case Mechanism::VKSlope: return "VKSlope";
        case Mechanism::FoldNeighborhood: return "FoldNeighborhood";
    }
    return "?";
}

StabilityVerdict classify_stability(const SolitonSpec& spec, const Grid& grid) {
    StabilityVerdict v;
    if (spec.branch() == Branch::Fold) {
        // Zero is the principal eigenvalue here; stability follows from the
        // stable states on either side, with the kernel check as evidence.
        auto evidence = fold_kernel_check(spec.epsilon(), grid);
        v.morse_index = evidence.morse_index;
        v.fold_evidence = std::move(evidence);
        v.stable = true;
        v.mechanism = Mechanism::FoldNeighborhood;
        return v;
    }
    v.morse_index = morse_index(spec, grid);
    v.mass_sq_slope = spec.branch() == Branch::Front ? slope_limit_at_three_quarters(spec.epsilon())
                                                     : mass_sq_slope(spec);
    if (v.morse_index == 0) {
        v.stable = true;
        v.mechanism = Mechanism::PositiveSpectrum;
    } else if (v.morse_index == 1 && *v.mass_sq_slope > 0.0) {
        v.stable = true;
        v.mechanism = Mechanism::VKSlope;
    }
    return v;
}

}  // namespace cqsoliton
