#include "cqsoliton/validate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cqsoliton/bifurcation.hpp"
#include "cqsoliton/gradient_flow.hpp"
#include "cqsoliton/parallel.hpp"
#include "cqsoliton/quadrature.hpp"
#include "cqsoliton/spectrum.hpp"

namespace cqsoliton {
namespace {

const std::vector<double> kScales = {0.1, 0.5, 0.9};

std::vector<SolitonSpec> sample_specs() {
    std::vector<SolitonSpec> out;
    for (double s : kScales) {
        const CouplingStrength eps(s * kSqrt3);
        const double lo = eps.squared() / 4.0;
        const double kbar = fold_point(eps);
        for (double t : {0.1, 0.4, 0.8}) out.emplace_back(eps, lo + t * (0.75 - lo), Branch::Lower);
        for (double t : {0.2, 0.6}) {
            out.emplace_back(eps, 0.75 + t * (kbar - 0.75), Branch::Lower);
            out.emplace_back(eps, 0.75 + t * (kbar - 0.75), Branch::Upper);
        }
        out.push_back(SolitonSpec::front(eps));
        out.push_back(SolitonSpec::fold(eps));
    }
    return out;
}

CheckResult finish(std::string name, double measured, double tolerance) {
    return {std::move(name), measured <= tolerance, measured, tolerance};
}

CheckResult check_first_integral() {
    double worst = 0.0;
    for (const auto& spec : sample_specs()) {
        for (double x : {0.125, 0.5, 1.0, 2.0, 5.0}) {
            worst = std::max({worst, std::abs(first_integral_residual(spec, x)),
                              std::abs(first_integral_residual(spec, -x))});
        }
    }
    return finish("closed_form.first_integral", worst, 1e-10);
}

CheckResult check_jump(const ValidationHooks& hooks) {
    double worst = 0.0;
    for (const auto& spec : sample_specs()) {
        const ClosedFormProfile p(spec);
        const double half_eps_u0 = 0.5 * spec.epsilon().value() * p.value(0.0);
        worst = std::max({worst, std::abs(hooks.origin_derivative(p, Side::Right) + half_eps_u0),
                          std::abs(hooks.origin_derivative(p, Side::Left) - half_eps_u0)});
    }
    return finish("closed_form.jump_condition", worst, 1e-9);
}

CheckResult check_profile_evenness() {
    double worst = 0.0;
    for (const auto& spec : sample_specs()) {
        const ClosedFormProfile p(spec);
        for (double x : {0.1, 0.7, 3.3, 11.0}) worst = std::max(worst, std::abs(p.value(x) - p.value(-x)));
    }
    return finish("closed_form.evenness", worst, 0.0);
}

CheckResult check_peak() {
    double worst = 0.0;
    for (const auto& spec : sample_specs()) {
        const double u0 = eval_profile(spec, 0.0);
        worst = std::max(worst, std::abs(u0 * u0 - peak_amplitude_squared(spec)));
    }
    return finish("closed_form.peak_identity", worst, 1e-10);
}

CheckResult check_mass_closed_form() {
    double worst = 0.0;
    for (const auto& spec : sample_specs()) {
        if (spec.branch() != Branch::Lower || spec.k() >= 0.75) continue;
        const ClosedFormProfile p(spec);
        const double k = spec.k();
        const auto half = integrate_half_line(
            [&](double x) { return p.value_squared(x); }, 40.0 / std::sqrt(k),
            [&](double x) {
                const double u2 = p.value_squared(x);
                return u2 < k ? u2 / (2.0 * std::sqrt(k - u2)) : HUGE_VAL;
            },
            1e-14);
        worst = std::max(worst, std::abs(2.0 * half.value - mass_squared(spec)));
    }
    return finish("bifurcation.phi_vs_quadrature", worst, 1e-8);
}

CheckResult check_curve_shape() {
    double violations = 0.0;
    for (double s : kScales) {
        const auto trace = trace_curve(CouplingStrength(s * kSqrt3), 64);
        int turns = 0;
        for (std::size_t i = 1; i < trace.samples.size(); ++i) {
            if (!(trace.samples[i].mass > trace.samples[i - 1].mass)) violations += 1.0;
            if (i + 1 < trace.samples.size()) {
                const double d1 = trace.samples[i].k - trace.samples[i - 1].k;
                const double d2 = trace.samples[i + 1].k - trace.samples[i].k;
                if (d1 * d2 < 0.0) ++turns;
            }
        }
        violations += std::abs(turns - 1);
    }
    return finish("bifurcation.monotone_mass_single_fold", violations, 0.0);
}

struct FlowChecks {
    double mass_error = 0.0;
    double asymmetry = 0.0;
    double energy_increase = 0.0;
};

FlowChecks run_flow_checks() {
    const Grid grid = Grid::build(-40.0, 40.0, 3200);
    const CouplingStrength eps(0.5 * kSqrt3);
    CngfConfig cfg;
    cfg.dt = 1e-3;
    cfg.mass_a = 1.7;
    FlowChecks out;
    out.energy_increase = -HUGE_VAL;
    auto u = default_initial_guess(grid, cfg.mass_a, 2.0);
    double e_prev = energy(u, eps);
    for (int n = 0; n < 200; ++n) {
        u = cngf_step(u, cfg, eps);
        out.mass_error = std::max(out.mass_error, std::abs(u.mass() - cfg.mass_a) / cfg.mass_a);
        const double e = energy(u, eps);
        out.energy_increase = std::max(out.energy_increase, e - e_prev);
        e_prev = e;
    }
    const std::size_t J = grid.intervals();
    for (std::size_t j = 0; j <= J; ++j) out.asymmetry = std::max(out.asymmetry, std::abs(u[j] - u[J - j]));
    return out;
}

CheckResult check_flow_jump() {
    // Converge from the exact profile with a large step: the fixed point of the
    // scheme does not depend on dt.
    const Grid grid = Grid::build(-20.0, 20.0, 800);
    const CouplingStrength eps(0.5 * kSqrt3);
    const SolitonSpec spec(eps, 0.5, Branch::Lower);
    CngfConfig cfg;
    cfg.dt = 1e-2;
    cfg.mass_a = mass(spec);
    cfg.max_steps = 200000;
    const auto result = run_cngf(sample_exact(grid, spec), cfg, eps);
    const auto& u = result.profile;
    const std::size_t j0 = grid.j0();
    const double h = grid.h();
    const double jump = (u[j0 + 1] - u[j0]) / h - (u[j0] - u[j0 - 1]) / h;
    const double residual = std::abs(jump + eps.value() * u[j0]);
    return finish("gradient_flow.discrete_jump", result.converged ? residual : HUGE_VAL, 5.0 * h);
}

const Grid& spectral_grid() {
    static const Grid g = Grid::build(-40.0, 40.0, 1600);
    return g;
}

CheckResult check_sturm_consistency() {
    double violations = 0.0;
    for (const auto& spec : sample_specs()) {
        const auto op = assemble_operator(spec, spectral_grid());
        const auto ev = lowest_eigenvalues(op, 4);
        for (std::size_t i = 0; i < ev.size(); ++i) {
            if (sturm_count(op.matrix, ev[i] - 1e-9) > i) violations += 1.0;
        }
        const std::size_t morse = morse_index(op);
        const auto below = std::count_if(ev.begin(), ev.end(), [&](double v) { return v < -zero_tolerance(op.grid); });
        if (static_cast<std::size_t>(below) != morse) violations += 1.0;
    }
    return finish("spectrum.sturm_vs_eigenvalues", violations, 0.0);
}

CheckResult check_delta_well() {
    double worst = 0.0;
    const auto& grid = spectral_grid();
    const std::vector<double> zero(grid.nodes(), 0.0);
    for (double s : kScales) {
        const CouplingStrength eps(s * kSqrt3);
        const SolitonSpec spec(eps, 0.5 * (eps.squared() / 4.0 + 0.75), Branch::Lower);
        const auto ev = lowest_eigenvalues(assemble_operator(spec, grid, zero), 1);
        worst = std::max(worst, std::abs(ev.front() - (spec.k() - eps.squared() / 4.0)));
    }
    return finish("spectrum.delta_well", worst, 5e-3);
}

CheckResult check_morse_branches() {
    double violations = 0.0;
    for (double s : kScales) {
        const CouplingStrength eps(s * kSqrt3);
        const double lo = eps.squared() / 4.0;
        const double kbar = fold_point(eps);
        for (double t : {0.2, 0.5, 0.8}) {
            if (morse_index(SolitonSpec(eps, lo + t * (0.75 - lo), Branch::Lower), spectral_grid()) != 1) violations += 1.0;
            if (morse_index(SolitonSpec(eps, 0.75 + t * (kbar - 0.75), Branch::Upper), spectral_grid()) != 0) {
                violations += 1.0;
            }
        }
    }
    return finish("spectrum.morse_index_by_branch", violations, 0.0);
}

CheckResult check_f_positive() {
    double nonpositive = 0.0;
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        if (!(f_integral(CouplingStrength(s * kSqrt3)).value > 0.0)) nonpositive += 1.0;
    }
    return finish("spectrum.f_integral_positive", nonpositive, 0.0);
}

}  // namespace

bool ValidationReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const ValidationHooks& hooks) {
    FlowChecks flow;
    std::vector<std::function<std::vector<CheckResult>()>> jobs = {
        [] { return std::vector{check_first_integral()}; },
        [&] { return std::vector{check_jump(hooks)}; },
        [] { return std::vector{check_profile_evenness()}; },
        [] { return std::vector{check_peak()}; },
        [] { return std::vector{check_mass_closed_form()}; },
        [] { return std::vector{check_curve_shape()}; },
        [&] {
            flow = run_flow_checks();
            return std::vector{finish("gradient_flow.mass_renormalization", flow.mass_error, 1e-12),
                               finish("gradient_flow.evenness", flow.asymmetry, 0.0),
                               finish("gradient_flow.energy_descent", flow.energy_increase, 1e-10)};
        },
        [] { return std::vector{check_flow_jump()}; },
        [] { return std::vector{check_sturm_consistency()}; },
        [] { return std::vector{check_delta_well()}; },
        [] { return std::vector{check_morse_branches()}; },
        [] { return std::vector{check_f_positive()}; },
    };
    std::vector<std::vector<CheckResult>> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) { results[i] = jobs[i](); });
    ValidationReport report;
    for (auto& r : results) report.checks.insert(report.checks.end(), r.begin(), r.end());
    return report;
}

}  // namespace cqsoliton
