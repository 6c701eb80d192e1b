#include <cmath>

#include "cqsoliton/bifurcation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqsoliton;

namespace {

// Regime-B mass from integrating the Euler-substitution profile in closed
// form: sqrt(3) log(a (y0 + 1) / (a y0 - b)).
double regime_b_mass_squared(double k, double u0sq) {
    const double s = std::sqrt(k / 3.0);
    const double a = 2.0 * s + 1.0, b = 2.0 * s - 1.0;
    const double B = 2.0 * u0sq - 4.0 * k;
    const double y0 = (-B + std::sqrt(B * B + 4.0 * a * b * u0sq * u0sq)) / (2.0 * a * u0sq);
    return kSqrt3 * std::log(a * (y0 + 1.0) / (a * y0 - b));
}

}  // namespace

TEST_CASE("lower-branch mass closed form against an ODE march") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        for (double t : {0.1, 0.5, 0.9}) {
            const double k = eps.squared() / 4.0 + t * (0.75 - eps.squared() / 4.0);
            const SolitonSpec spec(eps, k, Branch::Lower);
            CAPTURE(k);
            CHECK(mass_squared(spec) == doctest::Approx(oracle::march_mass_squared(k, peak_amplitude_squared(spec))).epsilon(1e-9));
        }
    }
}

TEST_CASE("quadrature masses in regime B and at the special points") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const double kbar = fold_point(eps);
        for (double t : {0.05, 0.5, 0.95}) {
            const double k = 0.75 + t * (kbar - 0.75);
            for (Branch b : {Branch::Lower, Branch::Upper}) {
                const SolitonSpec spec(eps, k, b);
                CHECK(mass_squared(spec) ==
                      doctest::Approx(regime_b_mass_squared(k, peak_amplitude_squared(spec))).epsilon(1e-10));
            }
        }
        // Front: sqrt(3) log(sqrt(3)/eps).
        CHECK(mass_squared(SolitonSpec::front(eps)) == doctest::Approx(kSqrt3 * std::log(kSqrt3 / eps.value())).epsilon(1e-11));
        const auto fold = SolitonSpec::fold(eps);
        CHECK(mass_squared(fold) == doctest::Approx(oracle::march_mass_squared(fold.k(), 1.5)).epsilon(1e-9));
    }
}

TEST_CASE("phi derivative against finite differences") {
    for (double eps : {0.0, 0.3, 1.2}) {
        for (double k : {eps * eps / 4.0 + 0.05, 0.5, 0.7}) {
            const double h = 1e-6;
            const double fd = (mass_function_phi(eps, k + h) - mass_function_phi(eps, k - h)) / (2 * h);
            CHECK(mass_function_phi_derivative(eps, k) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("free-space mass") {
    for (double k : {0.1, 0.4, 0.7}) {
        const double ref = 0.5 * kSqrt3 * std::log((kSqrt3 + 2 * std::sqrt(k)) / (kSqrt3 - 2 * std::sqrt(k)));
        CHECK(free_space_mass_squared(k) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("explicit slopes against centred differences of the mass") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const double kbar = fold_point(eps);
        for (double t : {0.2, 0.5, 0.8}) {
            const double k = 0.75 + t * (kbar - 0.75);
            const double h = 1e-5 * (kbar - 0.75);
            for (Branch b : {Branch::Lower, Branch::Upper}) {
                const double fd = (mass_squared(SolitonSpec(eps, k + h, b)) - mass_squared(SolitonSpec(eps, k - h, b))) / (2 * h);
                CHECK(mass_sq_slope(SolitonSpec(eps, k, b)) == doctest::Approx(fd).epsilon(1e-5));
            }
        }
        const double k = 0.5 * (eps.squared() / 4.0 + 0.75);
        const double fd = (mass_squared(SolitonSpec(eps, k + 1e-6, Branch::Lower)) -
                           mass_squared(SolitonSpec(eps, k - 1e-6, Branch::Lower))) / 2e-6;
        CHECK(mass_sq_slope(SolitonSpec(eps, k, Branch::Lower)) == doctest::Approx(fd).epsilon(1e-6));
        CHECK_THROWS_AS(mass_sq_slope(SolitonSpec::fold(eps)), DomainError);
    }
}

TEST_CASE("slope limit at k = 3/4 from both sides") {
    for (double e : {0.3, 0.8, 1.5}) {
        const CouplingStrength eps(e);
        const double lim = slope_limit_at_three_quarters(eps);
        CHECK(lim == doctest::Approx(kSqrt3 * (1.0 / (e * e) + 1.0 / 3.0)));
        CHECK(mass_sq_slope(SolitonSpec(eps, 0.75 - 1e-4, Branch::Lower)) == doctest::Approx(lim).epsilon(1e-2));
        CHECK(mass_sq_slope(SolitonSpec(eps, 0.75 + 1e-4, Branch::Lower)) == doctest::Approx(lim).epsilon(1e-2));
    }
}

TEST_CASE("traced curve") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const auto trace = trace_curve(eps, 101);
        REQUIRE(trace.samples.size() == 101);
        int folds = 0;
        for (std::size_t i = 0; i < trace.samples.size(); ++i) {
            const auto& x = trace.samples[i];
            if (x.branch == Branch::Fold) {
                ++folds;
                CHECK(x.k == fold_point(eps));
                CHECK(std::isinf(x.mass_sq_slope));
            }
            if (i > 0) CHECK(x.mass > trace.samples[i - 1].mass);
            if (x.branch == Branch::Lower) CHECK(x.mass_sq_slope > 0.0);
            if (x.branch == Branch::Upper) CHECK(x.mass_sq_slope < 0.0);
        }
        CHECK(folds == 1);
        CHECK(trace.samples.back().branch == Branch::Upper);
        CHECK(trace.samples.back().k - 0.75 == doctest::Approx(curve_guard(eps)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(trace_curve(CouplingStrength(0.5), 4), DomainError);
}

TEST_CASE("free-space curve has no upper branch") {
    const auto curve = trace_free_space_curve(50);
    CHECK(curve.size() == 50);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        CHECK(curve[i].branch == Branch::Lower);
        CHECK(curve[i].k < 0.75);
        if (i) CHECK(curve[i].mass > curve[i - 1].mass);
    }
}

TEST_CASE("upper-branch mass grows without bound towards 3/4") {
    const CouplingStrength eps(0.5 * kSqrt3);
    double prev = mass(SolitonSpec::fold(eps));
    for (double d : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double m = mass(SolitonSpec(eps, 0.75 + d, Branch::Upper));
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("inverting the mass") {
    const CouplingStrength eps(0.5 * kSqrt3);
    for (double k : {0.3, 0.6, 0.8}) {
        const double m = mass(SolitonSpec(eps, k, Branch::Lower));
        CHECK(solve_k_for_mass(eps, m, Branch::Lower) == doctest::Approx(k).epsilon(1e-10));
    }
    for (double k : {0.76, 0.85, 0.93}) {
        const double m = mass(SolitonSpec(eps, k, Branch::Upper));
        CHECK(solve_k_for_mass(eps, m, Branch::Upper) == doctest::Approx(k).epsilon(1e-10));
    }
    const double fold_mass = mass(SolitonSpec::fold(eps));
    try {
        solve_k_for_mass(eps, fold_mass + 0.1, Branch::Lower);
        FAIL("expected MassRangeError");
    } catch (const MassRangeError& e) {
        CHECK(e.fold_mass() == doctest::Approx(fold_mass));
    }
    CHECK_THROWS_AS(solve_k_for_mass(eps, fold_mass - 0.1, Branch::Upper), MassRangeError);
    CHECK_THROWS_AS(solve_k_for_mass(eps, 1.0, Branch::Fold), DomainError);
}
