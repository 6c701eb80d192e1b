#pragma once

// Continuous normalized gradient flow (imaginary-time propagation) for the
// stationary problem with prescribed mass, on a uniform grid with a node at 0.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cqsoliton/closed_form.hpp"

namespace cqsoliton {

class Grid {
public:
    /// Uniform grid with J intervals on [x_min, x_max]. Rejects grids where
    /// x = 0 is not a node (to relative 1e-9 in the index).
    static Grid build(double x_min, double x_max, std::size_t J);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t intervals() const noexcept { return J_; }
    std::size_t nodes() const noexcept { return J_ + 1; }
    double h() const noexcept { return h_; }
    std::size_t j0() const noexcept { return j0_; }
    /// x_j = (j - j0) h, so mirrored nodes are exact negatives.
    double x(std::size_t j) const noexcept;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Grid(double x_min, double x_max, std::size_t J, double h, std::size_t j0)
        : x_min_(x_min), x_max_(x_max), J_(J), h_(h), j0_(j0) {}
    double x_min_;
    double x_max_;
    std::size_t J_;
    double h_;
    std::size_t j0_;
};

class GridFunction {
public:
    /// Throws DomainError on a size mismatch or non-finite values.
    GridFunction(Grid grid, std::vector<double> values);
    static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    double at_origin() const noexcept { return values_[grid_.j0()]; }
    /// sqrt(h sum u_j^2).
    double mass() const noexcept;
    double max_abs_difference(const GridFunction& other) const;

private:
    Grid grid_;
    std::vector<double> values_;
};

/// How the delta potential enters the discrete scheme.
enum class JumpTreatment {
    /// -eps/h on the diagonal at x = 0; symmetric and second-order accurate
    /// for the smooth parts, consistent with the discrete energy.
    Lumped,
    /// Eliminates u_{j0} through u_{j0 +- 1} = (1 - h eps/2) u_{j0}; first order.
    OneSided,
};

struct CngfConfig {
    double dt = 1e-4;
    double mass_a = 1.0;
    std::size_t max_steps = 2'000'000;
    double conv_tol = 1e-8;  // on max_j |u^{n+1}_j - u^n_j| / dt
    JumpTreatment jump = JumpTreatment::Lumped;

    void check() const;
};

struct CngfResult {
    GridFunction profile;
    double extracted_k = 0.0;
    double energy = 0.0;
    std::size_t steps_taken = 0;
    bool converged = false;
    double final_change = 0.0;
    /// Largest per-step energy increase observed (<= 0 for strict descent).
    double max_energy_increase = 0.0;
};

/// (1/2)(|u_x|^2 - eps u(0)^2 - |u|_4^4 + |u|_6^6 / 3) with forward
/// differences and h-weighted sums. Pass eps = 0 for the free functional.
double energy(const GridFunction& u, double epsilon);
double energy(const GridFunction& u, CouplingStrength epsilon);

/// (-|u_x|^2 + eps u(0)^2 + 2|u|_4^4 - |u|_6^6) / |u|^2. Throws on zero mass.
double extracted_k(const GridFunction& u, double epsilon);
double extracted_k(const GridFunction& u, CouplingStrength epsilon);

/// One semi-implicit backward-Euler step followed by renormalization to
/// cfg.mass_a. Throws NumericalError on a singular system or a zero result.
GridFunction cngf_step(const GridFunction& u, const CngfConfig& cfg, CouplingStrength epsilon);

/// Iterates cngf_step from `init` (rescaled to cfg.mass_a first) until the
/// change per unit time drops below cfg.conv_tol or cfg.max_steps is hit.
CngfResult run_cngf(const GridFunction& init, const CngfConfig& cfg, CouplingStrength epsilon);

/// Gaussian exp(-x^2 / (2 width^2)) rescaled to mass_a.
GridFunction default_initial_guess(const Grid& grid, double mass_a, double width);

/// The exact profile of `spec` sampled on the grid.
GridFunction sample_exact(const Grid& grid, const SolitonSpec& spec);

}  // namespace cqsoliton
