#pragma once

// Linearization T = -d^2/dx^2 + k - (6 - 5u^2)u^2 - eps delta about a bound
// state: Morse index, fold kernel, the fold transversality integral f(eps)
// and the orbital-stability verdict.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cqsoliton/closed_form.hpp"
#include "cqsoliton/gradient_flow.hpp"
#include "cqsoliton/tridiagonal.hpp"

namespace cqsoliton {

/// T restricted to the interior nodes x_1..x_{J-1} (Dirichlet ends), with
/// the delta lumped as -eps/h on the diagonal at x = 0.
struct LinearizedOperator {
    Grid grid;
    SolitonSpec spec;
    SymmetricTridiagonal matrix;

    /// Interior row of the node x = 0.
    std::size_t origin_row() const noexcept { return grid.j0() - 1; }
};

/// The bare matrix for arbitrary k, eps >= 0 and nodal profile (J + 1 values).
SymmetricTridiagonal assemble_matrix(double k, double epsilon, const Grid& grid, std::span<const double> profile);

LinearizedOperator assemble_operator(const SolitonSpec& spec, const Grid& grid);
/// Same operator with u replaced by the given nodal values (J + 1 entries);
/// k and eps are taken from `spec`.
LinearizedOperator assemble_operator(const SolitonSpec& spec, const Grid& grid, std::span<const double> profile);

/// m <= 10 smallest eigenvalues, ascending, to 1e-10.
std::vector<double> lowest_eigenvalues(const LinearizedOperator& op, std::size_t m);

/// Eigenvalues below -tol_zero with tol_zero = 10 h^2.
double zero_tolerance(const Grid& grid) noexcept;
std::size_t morse_index(const LinearizedOperator& op);
std::size_t morse_index(const SolitonSpec& spec, const Grid& grid);

struct SpectrumReport {
    std::vector<double> eigenvalues;  // ascending
    std::size_t morse_index = 0;
    double zero_mode_gap = 0.0;        // min |lambda|
    std::optional<double> kernel_overlap;  // fold only
};

SpectrumReport spectrum_report(const SolitonSpec& spec, const Grid& grid, std::size_t m);

/// Operator at the fold with the cosine between the lowest eigenvector and
/// |u'| sampled on the grid.
SpectrumReport fold_kernel_check(CouplingStrength epsilon, const Grid& grid);

struct FIntegral {
    double value = 0.0;
    double error_bound = 0.0;
};

/// f(eps) = 2 int_0^inf (5u^2 - 3) u |u'|^3 dx at the fold profile.
FIntegral f_integral(CouplingStrength epsilon, double rel_tol = 1e-13);

enum class Mechanism { PositiveSpectrum, VKSlope, FoldNeighborhood };
std::string_view to_string(Mechanism m) noexcept;

struct StabilityVerdict {
    bool stable = false;
    std::optional<Mechanism> mechanism;
    std::size_t morse_index = 0;
    /// d||u||^2/dk where defined (absent at the fold; the k = 3/4 limit for the front).
    std::optional<double> mass_sq_slope;
    /// Present for the fold: the kernel evidence behind the limit argument.
    std::optional<SpectrumReport> fold_evidence;
};

StabilityVerdict classify_stability(const SolitonSpec& spec, const Grid& grid);

}  // namespace cqsoliton
