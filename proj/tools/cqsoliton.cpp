#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "cqsoliton/cli/commands.hpp"
#include "cqsoliton/errors.hpp"

namespace {

using namespace cqsoliton;
using namespace cqsoliton::cli;

struct Sink {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
};

Sink open_sink(const std::string& path) {
    Sink s;
    if (!path.empty()) {
        s.file = std::make_unique<std::ofstream>(path);
        if (!*s.file) throw DomainError("cannot open output file '" + path + "'");
    }
    return s;
}

void add_state_options(CLI::App* cmd, StateArgs& s, std::optional<double>& k) {
    cmd->add_option("--eps", s.epsilon, "delta strength, e.g. 0.866 or 0.5*sqrt3")->required();
    cmd->add_option("--k", k, "propagation constant (ignored for front/fold)");
    cmd->add_option("--branch", s.branch, "lower | upper | front | fold")->capture_default_str();
}

void add_grid_options(CLI::App* cmd, GridConfig& g) {
    cmd->add_option("--xmin", g.x_min, "left end of the box")->capture_default_str();
    cmd->add_option("--xmax", g.x_max, "right end of the box")->capture_default_str();
    cmd->add_option("--J", g.J, "number of intervals")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound states of the cubic-quintic NLS with a point defect"};
    app.require_subcommand(1);
    std::string output_path;
    std::string format_text;
    app.add_option("-o,--output", output_path, "write results to this file instead of stdout");

    ExactArgs exact;
    std::optional<double> exact_k;
    std::vector<double> range;
    auto* c_exact = app.add_subcommand("exact", "tabulate an exact profile");
    add_state_options(c_exact, exact.state, exact_k);
    c_exact->add_option("--range", range, "x interval (two values)")->expected(2);
    c_exact->add_option("--n", exact.n, "number of points")->capture_default_str();
    c_exact->add_option("--format", format_text, "csv | json");

    BifurcationArgs bif;
    auto* c_bif = app.add_subcommand("bifurcation", "trace the mass-vs-k curve");
    c_bif->add_option("--eps", bif.epsilon, "delta strength; 0 gives the free-space curve")->required();
    c_bif->add_option("--n", bif.n, "number of samples")->capture_default_str();
    c_bif->add_option("--format", format_text, "csv | json");

    std::string config_path;
    std::vector<std::string> compare;
    auto* c_solve = app.add_subcommand("solve", "run the normalized gradient flow from a config file");
    c_solve->add_option("--config", config_path, "JSON run configuration")->required();
    c_solve->add_option("--compare-exact", compare, "k branch of the exact state to compare against")->expected(2);
    c_solve->add_option("--format", format_text, "csv | json (overrides the config)");

    SpectrumArgs spec;
    std::optional<double> spec_k;
    auto* c_spec = app.add_subcommand("spectrum", "lowest eigenvalues of the linearized operator");
    c_spec->add_option("--eps", spec.state.epsilon, "delta strength")->required();
    c_spec->add_option("--k", spec_k, "propagation constant (ignored for front/fold)");
    c_spec->add_option("--branch", spec.state.branch, "lower | upper | front | fold")->capture_default_str();
    c_spec->add_option("--m", spec.m, "number of eigenvalues (<= 10)")->capture_default_str();
    c_spec->add_flag("--fold", spec.fold, "kernel check at the fold");
    add_grid_options(c_spec, spec.grid);
    c_spec->add_option("--format", format_text, "csv | json");

    StabilityArgs stab;
    std::optional<double> stab_k;
    auto* c_stab = app.add_subcommand("stability", "orbital-stability verdict");
    add_state_options(c_stab, stab.state, stab_k);
    add_grid_options(c_stab, stab.grid);
    c_stab->add_option("--format", format_text, "csv | json");

    ValidateArgs val;
    auto* c_val = app.add_subcommand("validate", "run the invariant self-check suite");
    c_val->add_option("--format", format_text, "text | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Sink sink = open_sink(output_path);
        std::ostream& out = sink.stream();
        const auto fmt = [&](Format fallback) { return format_text.empty() ? fallback : parse_format(format_text); };
        int code = kExitOk;
        if (*c_exact) {
            exact.state.k = exact_k;
            if (!range.empty()) {
                exact.x_lo = range[0];
                exact.x_hi = range[1];
            }
            exact.format = fmt(Format::Csv);
            code = cmd_exact(exact, out);
        } else if (*c_bif) {
            bif.format = fmt(Format::Csv);
            code = cmd_bifurcation(bif, out);
        } else if (*c_solve) {
            SolveArgs args{load_run_config(config_path), std::nullopt, std::nullopt};
            if (!format_text.empty()) args.format = parse_format(format_text);
            if (!compare.empty()) {
                StateArgs s;
                s.branch = compare[1];
                if (compare[0] != "-") {
                    try {
                        s.k = std::stod(compare[0]);
                    } catch (const std::exception&) {
                        throw DomainError("--compare-exact expects a numeric k, got '" + compare[0] + "'");
                    }
                }
                args.compare = s;
            }
            std::unique_ptr<std::ofstream> config_sink;
            std::ostream* solve_out = &out;
            if (output_path.empty() && !args.config.output.path.empty()) {
                config_sink = std::make_unique<std::ofstream>(args.config.output.path);
                if (!*config_sink) throw DomainError("cannot open output file '" + args.config.output.path + "'");
                solve_out = config_sink.get();
            }
            code = cmd_solve(args, *solve_out, std::cerr);
        } else if (*c_spec) {
            spec.state.k = spec_k;
            spec.format = fmt(Format::Json);
            code = cmd_spectrum(spec, out);
        } else if (*c_stab) {
            stab.state.k = stab_k;
            stab.format = fmt(Format::Json);
            code = cmd_stability(stab, out);
        } else if (*c_val) {
            val.format = fmt(Format::Text);
            code = cmd_validate(val, out);
        }
        out.flush();
        return code;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
