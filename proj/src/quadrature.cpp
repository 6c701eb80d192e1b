#include "cqsoliton/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cqsoliton/errors.hpp"

namespace cqsoliton {

namespace {
// Bisection levels per panel; callers supply panels of width ~1, so deeper
// recursion only chases rounding noise.
constexpr unsigned kMaxDepth = 12;
}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    std::vector<double> nodes{a};
    for (double p : breakpoints) {
        if (p > a && p < b) nodes.push_back(p);
    }
    std::sort(nodes.begin() + 1, nodes.end());
    nodes.push_back(b);

    QuadratureResult total;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i + 1] <= nodes[i]) continue;
        double err = 0.0;
        const double piece = gauss_kronrod<double, 31>::integrate(f, nodes[i], nodes[i + 1], kMaxDepth, rel_tol, &err);
        total.value += piece;
        total.error_bound += err;
    }
    if (!std::isfinite(total.value)) throw NumericalError("quadrature produced a non-finite value");
    return total;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double initial_cutoff,
                                     const std::function<double(double)>& tail_bound, double tail_tol,
                                     std::span<const double> breakpoints, double rel_tol) {
    double cutoff = initial_cutoff;
    double tail = tail_bound(cutoff);
    for (int i = 0; i < 60 && !(tail <= tail_tol); ++i) {
        cutoff *= 2.0;
        tail = tail_bound(cutoff);
    }
    if (!(tail <= tail_tol)) throw NumericalError("half-line quadrature: tail bound never met tolerance");

    // Panels of width ~1 keep every subinterval resolved by the Kronrod rule.
    std::vector<double> nodes(breakpoints.begin(), breakpoints.end());
    for (double x = 1.0; x < cutoff; x *= 2.0) nodes.push_back(x);
    auto result = integrate_adaptive(f, 0.0, cutoff, nodes, rel_tol);
    result.error_bound += tail;
    return result;
}

}  // namespace cqsoliton
