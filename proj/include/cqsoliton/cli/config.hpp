#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "cqsoliton/cli/output.hpp"
#include "cqsoliton/closed_form.hpp"
#include "cqsoliton/gradient_flow.hpp"

namespace cqsoliton::cli {

/// A literal ("0.866") or a multiple of sqrt(3) ("0.5*sqrt3", "sqrt3*0.5",
/// "sqrt3"). Does not check the admissible range.
double parse_epsilon(std::string_view text);

struct GridConfig {
    double x_min = -40.0;
    double x_max = 40.0;
    std::size_t J = 3200;
};

/// Mass taken from an exact state instead of a number.
struct MassFrom {
    double k = 0.0;
    Branch branch = Branch::Lower;
};

struct FlowConfig {
    double dt = 1e-4;
    std::optional<double> mass_a;
    std::optional<MassFrom> mass_from;
    std::size_t max_steps = 2'000'000;
    double conv_tol = 1e-8;
    double init_width = 2.0;
    JumpTreatment jump = JumpTreatment::Lumped;
};

struct OutputConfig {
    Format format = Format::Json;
    std::string path;  // empty: stdout
};

struct RunConfig {
    double epsilon = 0.0;
    GridConfig grid;
    FlowConfig flow;
    OutputConfig output;
};

/// Parses the JSON run configuration; DomainError names any missing or
/// malformed field.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace cqsoliton::cli
