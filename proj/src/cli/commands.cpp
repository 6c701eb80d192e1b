#include "cqsoliton/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cqsoliton/bifurcation.hpp"
#include "cqsoliton/errors.hpp"
#include "cqsoliton/gradient_flow.hpp"
#include "cqsoliton/spectrum.hpp"
#include "json.hpp"

namespace cqsoliton::cli {
namespace {

using nlohmann::json;

SolitonSpec build_spec(const StateArgs& s) {
    const CouplingStrength eps(parse_epsilon(s.epsilon));
    const Branch branch = parse_branch(s.branch);
    if (branch == Branch::Front) return SolitonSpec::front(eps);
    if (branch == Branch::Fold) return SolitonSpec::fold(eps);
    if (!s.k) throw DomainError("--k is required for branch " + std::string(to_string(branch)));
    return SolitonSpec(eps, *s.k, branch);
}

Grid build_grid(const GridConfig& g) { return Grid::build(g.x_min, g.x_max, g.J); }

json spec_json(const SolitonSpec& spec) {
    return {{"epsilon", spec.epsilon().value()}, {"k", spec.k()}, {"branch", std::string(to_string(spec.branch()))}};
}

// Non-finite doubles have no JSON spelling; emit them as strings.
json number_json(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void require_format(Format f, std::initializer_list<Format> allowed, const char* command) {
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
        throw DomainError(std::string("unsupported --format for ") + command);
    }
}

json report_json(const SpectrumReport& r, const Grid& grid) {
    json j = {{"eigenvalues", r.eigenvalues},
              {"morse_index", r.morse_index},
              {"zero_mode_gap", r.zero_mode_gap},
              {"tol_zero", zero_tolerance(grid)},
              {"grid", {{"x_min", grid.x_min()}, {"x_max", grid.x_max()}, {"J", grid.intervals()}}}};
    j["kernel_overlap"] = r.kernel_overlap ? json(*r.kernel_overlap) : json(nullptr);
    return j;
}

}  // namespace

int cmd_exact(const ExactArgs& args, std::ostream& out) {
    require_format(args.format, {Format::Csv, Format::Json}, "exact");
    if (args.n < 2) throw DomainError("--n must be at least 2");
    if (!(args.x_lo < args.x_hi)) throw DomainError("--range needs lo < hi");
    const auto spec = build_spec(args.state);
    const ClosedFormProfile profile(spec);

    std::vector<double> xs(args.n), us(args.n), dus(args.n), res(args.n);
    const double last = static_cast<double>(args.n - 1);
    for (std::size_t i = 0; i < args.n; ++i) {
        // Integer weights keep symmetric ranges exactly symmetric.
        const double x = ((last - static_cast<double>(i)) * args.x_lo + static_cast<double>(i) * args.x_hi) / last;
        xs[i] = x;
        us[i] = profile.value(x);
        dus[i] = x == 0.0 ? profile.derivative_at_origin(Side::Right) : profile.derivative(x);
        res[i] = first_integral_residual(spec.k(), us[i], dus[i]);
    }

    if (args.format == Format::Csv) {
        CsvWriter csv(out, {"x", "u", "du", "residual"});
        for (std::size_t i = 0; i < args.n; ++i) csv.row({xs[i], us[i], dus[i], res[i]});
    } else {
        json j = spec_json(spec);
        j["x"] = xs;
        j["u"] = us;
        j["du"] = dus;
        j["residual"] = res;
        write_json(out, j);
    }
    return kExitOk;
}

int cmd_bifurcation(const BifurcationArgs& args, std::ostream& out) {
    require_format(args.format, {Format::Csv, Format::Json}, "bifurcation");
    const double eps = parse_epsilon(args.epsilon);
    std::vector<BifurcationSample> samples;
    json meta = {{"epsilon", eps}};
    if (eps == 0.0) {
        samples = trace_free_space_curve(args.n);
    } else {
        const CouplingStrength e(eps);
        samples = trace_curve(e, args.n).samples;
        meta["fold_k"] = fold_point(e);
        meta["fold_mass"] = mass(SolitonSpec::fold(e));
    }

    if (args.format == Format::Csv) {
        CsvWriter csv(out, {"k", "mass", "mass_sq_slope", "branch"});
        for (const auto& s : samples) csv.row({s.k, s.mass, s.mass_sq_slope, std::string(to_string(s.branch))});
    } else {
        json rows = json::array();
        for (const auto& s : samples) {
            rows.push_back({{"k", s.k},
                            {"mass", s.mass},
                            {"mass_sq_slope", number_json(s.mass_sq_slope)},
                            {"branch", std::string(to_string(s.branch))}});
        }
        meta["samples"] = rows;
        write_json(out, meta);
    }
    return kExitOk;
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& log) {
    const auto& cfg = args.config;
    const Format format = args.format.value_or(cfg.output.format);
    require_format(format, {Format::Csv, Format::Json}, "solve");
    const CouplingStrength eps(cfg.epsilon);
    const Grid grid = build_grid(cfg.grid);

    CngfConfig flow;
    flow.dt = cfg.flow.dt;
    flow.max_steps = cfg.flow.max_steps;
    flow.conv_tol = cfg.flow.conv_tol;
    flow.jump = cfg.flow.jump;
    if (cfg.flow.mass_a) {
        flow.mass_a = *cfg.flow.mass_a;
    } else {
        flow.mass_a = mass(SolitonSpec(eps, cfg.flow.mass_from->k, cfg.flow.mass_from->branch));
    }
    flow.check();

    std::optional<GridFunction> exact;
    std::optional<SolitonSpec> compare_spec;
    if (args.compare) {
        StateArgs s = *args.compare;
        s.epsilon = format_number(cfg.epsilon);
        compare_spec = build_spec(s);
        exact = sample_exact(grid, *compare_spec);
    }

    const auto init = default_initial_guess(grid, flow.mass_a, cfg.flow.init_width);
    const auto result = run_cngf(init, flow, eps);
    const auto& u = result.profile;

    json summary = {{"epsilon", cfg.epsilon},
                    {"mass_a", flow.mass_a},
                    {"dt", flow.dt},
                    {"conv_tol", flow.conv_tol},
                    {"converged", result.converged},
                    {"steps_taken", result.steps_taken},
                    {"final_change", number_json(result.final_change)},
                    {"extracted_k", result.extracted_k},
                    {"energy", result.energy},
                    {"max_energy_increase", number_json(result.max_energy_increase)},
                    {"grid", {{"x_min", grid.x_min()}, {"x_max", grid.x_max()}, {"J", grid.intervals()}}}};
    if (exact) {
        summary["compare"] = spec_json(*compare_spec);
        summary["compare"]["max_error"] = u.max_abs_difference(*exact);
        summary["compare"]["k_error"] = std::abs(result.extracted_k - compare_spec->k());
    }

    if (format == Format::Csv) {
        std::vector<std::string> header = {"x", "u"};
        if (exact) header.push_back("u_exact");
        CsvWriter csv(out, header);
        for (std::size_t j = 0; j < grid.nodes(); ++j) {
            std::vector<Cell> row = {grid.x(j), u[j]};
            if (exact) row.emplace_back((*exact)[j]);
            csv.row(row);
        }
        log << summary.dump() << '\n';
    } else {
        summary["x"] = [&] {
            std::vector<double> xs(grid.nodes());
            for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = grid.x(j);
            return xs;
        }();
        summary["u"] = std::vector<double>(u.values().begin(), u.values().end());
        if (exact) summary["compare"]["u_exact"] = std::vector<double>(exact->values().begin(), exact->values().end());
        write_json(out, summary);
    }
    return kExitOk;
}

int cmd_spectrum(const SpectrumArgs& args, std::ostream& out) {
    require_format(args.format, {Format::Csv, Format::Json}, "spectrum");
    const Grid grid = build_grid(args.grid);
    SpectrumReport report;
    std::optional<SolitonSpec> spec;
    if (args.fold) {
        const CouplingStrength eps(parse_epsilon(args.state.epsilon));
        spec = SolitonSpec::fold(eps);
        report = fold_kernel_check(eps, grid);
    } else {
        spec = build_spec(args.state);
        report = spectrum_report(*spec, grid, args.m);
    }
    if (args.format == Format::Csv) {
        CsvWriter csv(out, {"index", "eigenvalue"});
        for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
            csv.row({static_cast<std::int64_t>(i), report.eigenvalues[i]});
        }
    } else {
        json j = spec_json(*spec);
        j.update(report_json(report, grid));
        write_json(out, j);
    }
    return kExitOk;
}

int cmd_stability(const StabilityArgs& args, std::ostream& out) {
    require_format(args.format, {Format::Csv, Format::Json}, "stability");
    const Grid grid = build_grid(args.grid);
    const auto spec = build_spec(args.state);
    const auto v = classify_stability(spec, grid);
    const std::string mechanism = v.mechanism ? std::string(to_string(*v.mechanism)) : "none";
    if (args.format == Format::Csv) {
        CsvWriter csv(out, {"epsilon", "k", "branch", "stable", "mechanism", "morse_index", "mass_sq_slope"});
        csv.row({spec.epsilon().value(), spec.k(), std::string(to_string(spec.branch())),
                 std::string(v.stable ? "true" : "false"), mechanism, static_cast<std::int64_t>(v.morse_index),
                 v.mass_sq_slope ? *v.mass_sq_slope : std::nan("")});
    } else {
        json j = spec_json(spec);
        j["stable"] = v.stable;
        j["mechanism"] = v.mechanism ? json(mechanism) : json(nullptr);
        j["morse_index"] = v.morse_index;
        j["mass_sq_slope"] = v.mass_sq_slope ? json(*v.mass_sq_slope) : json(nullptr);
        j["fold_evidence"] = v.fold_evidence ? report_json(*v.fold_evidence, grid) : json(nullptr);
        write_json(out, j);
    }
    return kExitOk;
}

int cmd_validate(const ValidateArgs& args, std::ostream& out) {
    require_format(args.format, {Format::Text, Format::Json}, "validate");
    const auto report = run_validation(args.hooks);
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"measured", number_json(c.measured)},
                          {"tolerance", c.tolerance}});
    }
    const json summary = {{"all_passed", report.all_passed()}, {"checks", checks}};
    if (args.format == Format::Text) {
        for (const auto& c : report.checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << format_number(c.measured)
                << "  tolerance=" << format_number(c.tolerance) << '\n';
        }
        out << summary.dump() << '\n';
    } else {
        write_json(out, summary);
    }
    return report.all_passed() ? kExitOk : kExitNumerical;
}

}  // namespace cqsoliton::cli
