#pragma once

// Subcommand implementations. Each writes its result to `out` and returns the
// process exit code; DomainError (exit 2) and NumericalError (exit 3)
// propagate to the caller.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cqsoliton/cli/config.hpp"
#include "cqsoliton/cli/output.hpp"
#include "cqsoliton/validate.hpp"

namespace cqsoliton::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

struct StateArgs {
    std::string epsilon;
    std::optional<double> k;  // not needed for front/fold
    std::string branch = "lower";
};

struct ExactArgs {
    StateArgs state;
    double x_lo = -10.0;
    double x_hi = 10.0;
    std::size_t n = 801;
    Format format = Format::Csv;
};
int cmd_exact(const ExactArgs& args, std::ostream& out);

struct BifurcationArgs {
    std::string epsilon;  // "0" selects the free-space curve
    int n = 201;
    Format format = Format::Csv;
};
int cmd_bifurcation(const BifurcationArgs& args, std::ostream& out);

struct SolveArgs {
    RunConfig config;
    std::optional<StateArgs> compare;  // epsilon taken from the config
    std::optional<Format> format;      // overrides config.output.format
};
/// `log` receives the run summary when the output format is CSV.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& log);

struct SpectrumArgs {
    StateArgs state;
    std::size_t m = 5;
    bool fold = false;
    GridConfig grid;
    Format format = Format::Json;
};
int cmd_spectrum(const SpectrumArgs& args, std::ostream& out);

struct StabilityArgs {
    StateArgs state;
    GridConfig grid;
    Format format = Format::Json;
};
int cmd_stability(const StabilityArgs& args, std::ostream& out);

struct ValidateArgs {
    Format format = Format::Text;
    ValidationHooks hooks;
};
int cmd_validate(const ValidateArgs& args, std::ostream& out);

}  // namespace cqsoliton::cli
