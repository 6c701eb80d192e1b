#include "cqsoliton/gradient_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cqsoliton/errors.hpp"
#include "cqsoliton/tridiagonal.hpp"

namespace cqsoliton {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Norms {
    double l2_sq = 0.0;
    double dx_sq = 0.0;
    double l4_4 = 0.0;
    double l6_6 = 0.0;
};

Norms norms(std::span<const double> v, double h) {
    Norms n;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double s = v[j] * v[j];
        n.l2_sq += s;
        n.l4_4 += s * s;
        n.l6_6 += s * s * s;
        if (j + 1 < v.size()) {
            const double d = v[j + 1] - v[j];
            n.dx_sq += d * d;
        }
    }
    n.l2_sq *= h;
    n.l4_4 *= h;
    n.l6_6 *= h;
    n.dx_sq /= h;
    return n;
}

double energy_of(std::span<const double> v, double h, std::size_t j0, double epsilon) {
    const auto n = norms(v, h);
    return 0.5 * (n.dx_sq - epsilon * v[j0] * v[j0] - n.l4_4 + n.l6_6 / 3.0);
}

double weighted_norm(std::span<const double> v, double h) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(h * s);
}

// Work buffers reused across steps of one flow run.
class Stepper {
public:
    Stepper(const Grid& grid, const CngfConfig& cfg, double epsilon)
        : grid_(grid), cfg_(cfg), eps_(epsilon), n_(grid.intervals() - 1),
          lower_(n_), diag_(n_), upper_(n_), rhs_(n_) {}

    std::vector<double> step(std::span<const double> u) {
        const double h = grid_.h();
        const double inv_h2 = 1.0 / (h * h);
        const double inv_dt = 1.0 / cfg_.dt;
        const std::size_t j0 = grid_.j0();
        for (std::size_t i = 0; i < n_; ++i) {
            const double s = u[i + 1] * u[i + 1];
            diag_[i] = inv_dt + 2.0 * inv_h2 - 2.0 * s + s * s;
            lower_[i] = -inv_h2;
            upper_[i] = -inv_h2;
            rhs_[i] = u[i + 1] * inv_dt;
        }
        const std::size_t m = j0 - 1;  // interior index of x = 0
        const bool one_sided = cfg_.jump == JumpTreatment::OneSided;
        if (one_sided) {
            // Rows next to 0 absorb the eliminated centre value; the centre row
            // becomes trivial and the halves decouple.
            const double modified = (2.0 - 2.0 / (2.0 - h * eps_)) * inv_h2;
            if (m > 0) {
                diag_[m - 1] += modified - 2.0 * inv_h2;
                upper_[m - 1] = 0.0;
            }
            if (m + 1 < n_) {
                diag_[m + 1] += modified - 2.0 * inv_h2;
                lower_[m + 1] = 0.0;
            }
            diag_[m] = 1.0;
            lower_[m] = upper_[m] = rhs_[m] = 0.0;
        } else {
            diag_[m] -= eps_ / h;
        }

        const auto interior = solve_twisted(lower_, diag_, upper_, rhs_, m);
        std::vector<double> out(grid_.nodes(), 0.0);
        std::copy(interior.begin(), interior.end(), out.begin() + 1);
        if (one_sided) {
            const double left = j0 >= 1 ? out[j0 - 1] : 0.0;
            const double right = out[j0 + 1];
            out[j0] = 0.5 * (left + right) / (1.0 - 0.5 * h * eps_);
        }
        const double norm = weighted_norm(out, h);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw NumericalError("gradient-flow step produced a zero or non-finite profile; cannot renormalize to mass " +
                                 fmt(cfg_.mass_a));
        }
        const double scale = cfg_.mass_a / norm;
        for (double& x : out) x *= scale;
        return out;
    }

private:
    const Grid& grid_;
    const CngfConfig& cfg_;
    double eps_;
    std::size_t n_;
    std::vector<double> lower_, diag_, upper_, rhs_;
};

}  // namespace

Grid Grid::build(double x_min, double x_max, std::size_t J) {
    if (!(x_min < 0.0 && x_max > 0.0) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw DomainError("grid requires x_min < 0 < x_max, got [" + fmt(x_min) + ", " + fmt(x_max) + "]");
    }
    if (J < 2) throw DomainError("grid requires at least 2 intervals");
    const double length = x_max - x_min;
    const double index = -x_min * static_cast<double>(J) / length;
    const double j0 = std::round(index);
    if (std::abs(index - j0) > 1e-9 * std::max(1.0, index) || j0 < 1.0 || j0 > static_cast<double>(J) - 1.0) {
        throw DomainError("x = 0 is not a grid node for [" + fmt(x_min) + ", " + fmt(x_max) + "] with J = " +
                          std::to_string(J) + " (index " + fmt(index) + ")");
    }
    return Grid(x_min, x_max, J, length / static_cast<double>(J), static_cast<std::size_t>(j0));
}

double Grid::x(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(j0_)) * h_;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.nodes()) {
        throw DomainError("grid function needs " + std::to_string(grid_.nodes()) + " values, got " +
                          std::to_string(values_.size()));
    }
    if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
        throw DomainError("grid function values must be finite");
    }
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.nodes());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return GridFunction(grid, std::move(v));
}

double GridFunction::mass() const noexcept { return weighted_norm(values_, grid_.h()); }

double GridFunction::max_abs_difference(const GridFunction& other) const {
    if (!(other.grid_ == grid_)) throw DomainError("grid functions live on different grids");
    double m = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) m = std::max(m, std::abs(values_[j] - other.values_[j]));
    return m;
}

void CngfConfig::check() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive, got " + fmt(dt));
    if (!(mass_a > 0.0) || !std::isfinite(mass_a)) throw DomainError("mass_a must be positive, got " + fmt(mass_a));
    if (max_steps == 0) throw DomainError("max_steps must be positive");
    if (!(conv_tol > 0.0) || !std::isfinite(conv_tol)) {
        throw DomainError("conv_tol must be positive, got " + fmt(conv_tol));
    }
}

double energy(const GridFunction& u, double epsilon) {
    return energy_of(u.values(), u.grid().h(), u.grid().j0(), epsilon);
}

double energy(const GridFunction& u, CouplingStrength epsilon) { return energy(u, epsilon.value()); }

double extracted_k(const GridFunction& u, double epsilon) {
    const auto n = norms(u.values(), u.grid().h());
    if (!(n.l2_sq > 0.0)) throw DomainError("extracted_k requires a profile with positive mass");
    const double u0 = u.at_origin();
    return (-n.dx_sq + epsilon * u0 * u0 + 2.0 * n.l4_4 - n.l6_6) / n.l2_sq;
}

double extracted_k(const GridFunction& u, CouplingStrength epsilon) { return extracted_k(u, epsilon.value()); }

GridFunction cngf_step(const GridFunction& u, const CngfConfig& cfg, CouplingStrength epsilon) {
    cfg.check();
    Stepper stepper(u.grid(), cfg, epsilon.value());
    return GridFunction(u.grid(), stepper.step(u.values()));
}

CngfResult run_cngf(const GridFunction& init, const CngfConfig& cfg, CouplingStrength epsilon) {
    cfg.check();
    const Grid& grid = init.grid();
    const double m0 = init.mass();
    if (!(m0 > 0.0)) throw DomainError("initial profile must have positive mass");

    std::vector<double> u(init.values().begin(), init.values().end());
    for (double& x : u) x *= cfg.mass_a / m0;

    Stepper stepper(grid, cfg, epsilon.value());
    double e_prev = energy_of(u, grid.h(), grid.j0(), epsilon.value());
    double max_increase = -std::numeric_limits<double>::infinity();
    double change = std::numeric_limits<double>::infinity();
    std::size_t steps = 0;
    bool converged = false;
    while (steps < cfg.max_steps) {
        auto next = stepper.step(u);
        ++steps;
        double diff = 0.0;
        for (std::size_t j = 0; j < u.size(); ++j) diff = std::max(diff, std::abs(next[j] - u[j]));
        change = diff / cfg.dt;
        u = std::move(next);
        const double e = energy_of(u, grid.h(), grid.j0(), epsilon.value());
        max_increase = std::max(max_increase, e - e_prev);
        e_prev = e;
        if (change < cfg.conv_tol) {
            converged = true;
            break;
        }
    }
    GridFunction profile(grid, std::move(u));
    const double k = extracted_k(profile, epsilon);
    return CngfResult{profile, k, e_prev, steps, converged, change, max_increase};
}

GridFunction default_initial_guess(const Grid& grid, double mass_a, double width) {
    if (!(width > 0.0)) throw DomainError("initial-guess width must be positive, got " + fmt(width));
    if (!(mass_a > 0.0)) throw DomainError("mass_a must be positive, got " + fmt(mass_a));
    const double w2 = 2.0 * width * width;
    auto g = GridFunction::sample(grid, [w2](double x) { return std::exp(-x * x / w2); });
    const double scale = mass_a / g.mass();
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x *= scale;
    return GridFunction(grid, std::move(v));
}

GridFunction sample_exact(const Grid& grid, const SolitonSpec& spec) {
    const ClosedFormProfile profile(spec);
    return GridFunction::sample(grid, [&](double x) { return profile.value(x); });
}

}  // namespace cqsoliton
