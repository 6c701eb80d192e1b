#include <cmath>
#include <vector>

#include "cqsoliton/closed_form.hpp"
#include "cqsoliton/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqsoliton;

namespace {

std::vector<SolitonSpec> specs_on_curve() {
    std::vector<SolitonSpec> out;
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const double lo = eps.squared() / 4.0;
        const double kbar = fold_point(eps);
        for (double t : {0.05, 0.5, 0.95}) out.emplace_back(eps, lo + t * (0.75 - lo), Branch::Lower);
        for (double t : {0.01, 0.5, 0.99}) {
            out.emplace_back(eps, 0.75 + t * (kbar - 0.75), Branch::Lower);
            out.emplace_back(eps, 0.75 + t * (kbar - 0.75), Branch::Upper);
        }
        out.push_back(SolitonSpec::front(eps));
        out.push_back(SolitonSpec::fold(eps));
    }
    return out;
}

// Root of sinh(2 sqrt(k) xi) / (1 + S cosh(2 sqrt(k) xi)) = eps / (2 sqrt(k) S).
double xi_by_bisection(double eps, double k) {
    const double sk = std::sqrt(k);
    const double S = std::sqrt(1.0 - 4.0 * k / 3.0);
    const auto g = [&](double xi) {
        const double t = 2.0 * sk * xi;
        return std::sinh(t) / (1.0 + S * std::cosh(t)) - eps / (2.0 * sk * S);
    };
    double lo = 0.0, hi = 1.0;
    while (g(hi) < 0.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("coupling strength and branch parsing") {
    CHECK_THROWS_AS(CouplingStrength{0.0}, DomainError);
    CHECK_THROWS_AS(CouplingStrength{kSqrt3}, DomainError);
    CHECK_THROWS_AS(CouplingStrength{-0.1}, DomainError);
    CHECK(CouplingStrength(0.3).squared() == doctest::Approx(0.09));
    CHECK(parse_branch("Lower") == Branch::Lower);
    CHECK(parse_branch("FOLD") == Branch::Fold);
    CHECK_THROWS_AS(parse_branch("middle"), DomainError);
    CHECK(fold_point(CouplingStrength(0.1 * kSqrt3)) == doctest::Approx(0.7575).epsilon(1e-15));
}

TEST_CASE("spec admissibility ranges") {
    const CouplingStrength eps(0.5 * kSqrt3);
    const double kbar = fold_point(eps);
    CHECK_NOTHROW(SolitonSpec(eps, 0.5, Branch::Lower));
    CHECK_NOTHROW(SolitonSpec(eps, kbar, Branch::Upper));
    CHECK_THROWS_AS(SolitonSpec(eps, eps.squared() / 4.0, Branch::Lower), DomainError);
    CHECK_THROWS_AS(SolitonSpec(eps, kbar + 1e-9, Branch::Lower), DomainError);
    CHECK_THROWS_AS(SolitonSpec(eps, 0.7, Branch::Upper), DomainError);
    CHECK_THROWS_AS(SolitonSpec(eps, 0.75, Branch::Lower), DomainError);
    CHECK_THROWS_AS(SolitonSpec(eps, 0.8, Branch::Front), DomainError);
    CHECK(SolitonSpec::front(eps).k() == 0.75);
    CHECK(SolitonSpec::fold(eps).k() == kbar);
    try {
        SolitonSpec(eps, 1.5, Branch::Lower);
        FAIL("expected rejection");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("k must lie in") != std::string::npos);
    }
}

TEST_CASE("peak amplitudes") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const auto fold = SolitonSpec::fold(eps);
        CHECK(peak_amplitude_squared(fold) == doctest::Approx(1.5).epsilon(1e-15));
        // Both branches meet at the fold.
        const double k = fold_point(eps) - 1e-13;
        CHECK(peak_amplitude_squared(SolitonSpec(eps, k, Branch::Lower)) == doctest::Approx(1.5).epsilon(1e-5));
        CHECK(peak_amplitude_squared(SolitonSpec(eps, k, Branch::Upper)) == doctest::Approx(1.5).epsilon(1e-5));
    }
    const CouplingStrength eps(0.5 * kSqrt3);
    const SolitonSpec lower(eps, 0.5, Branch::Lower);
    const double z = (4.0 / 3.0) * (0.5 - eps.squared() / 4.0);
    CHECK(peak_amplitude_squared(lower) == doctest::Approx(1.5 * (1.0 - std::sqrt(1.0 - z))).epsilon(1e-13));

    const auto [lo, hi] = tilde_bounds(0.75);
    CHECK(lo == doctest::Approx(1.5));
    CHECK(hi == doctest::Approx(1.5));
    CHECK_THROWS_AS(tilde_bounds(0.8), DomainError);
}

TEST_CASE("profiles agree with an RK4 march of the first-order equation") {
    for (const auto& spec : specs_on_curve()) {
        const ClosedFormProfile p(spec);
        for (double x : {0.5, 1.5, 4.0}) {
            const double ref = oracle::march_profile(spec.k(), p.peak_sq(), x);
            CAPTURE(spec.k());
            CAPTURE(x);
            CHECK(p.value(x) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("profiles are even, positive and decaying") {
    for (const auto& spec : specs_on_curve()) {
        const ClosedFormProfile p(spec);
        double prev = p.value(0.0);
        CHECK(prev * prev == doctest::Approx(peak_amplitude_squared(spec)).epsilon(1e-12));
        for (double x = 0.25; x < 30.0; x += 0.25) {
            CHECK(p.value(x) == p.value(-x));
            CHECK(p.value(x) < prev);
            CHECK(p.value(x) > 0.0);
            prev = p.value(x);
        }
    }
}

TEST_CASE("jump condition and first integral") {
    for (const auto& spec : specs_on_curve()) {
        const ClosedFormProfile p(spec);
        const double u0 = p.value(0.0);
        const double half = 0.5 * spec.epsilon().value() * u0;
        CHECK(p.derivative_at_origin(Side::Right) == doctest::Approx(-half).epsilon(1e-12));
        CHECK(p.derivative_at_origin(Side::Left) == doctest::Approx(half).epsilon(1e-12));
        for (double x : {-3.0, -0.2, 0.2, 1.0, 7.0}) CHECK(std::abs(first_integral_residual(spec, x)) < 1e-12);
    }
    const CouplingStrength eps(0.5 * kSqrt3);
    CHECK_THROWS_AS(eval_derivative(SolitonSpec(eps, 0.5, Branch::Lower), 0.0), DomainError);
}

TEST_CASE("second-order equation residual by finite differences") {
    for (const auto& spec : specs_on_curve()) {
        const ClosedFormProfile p(spec);
        const double k = spec.k();
        for (double x : {0.25, 1.0, 2.5}) {
            const double h = 1e-4;
            const double xp = x + h, xm = x - h;
            const double hp = xp - x, hm = x - xm;
            const double u = p.value(x);
            const double upp = 2.0 * (hm * p.value(xp) - (hp + hm) * u + hp * p.value(xm)) / (hp * hm * (hp + hm));
            CHECK(std::abs(upp - k * u + 2 * u * u * u - u * u * u * u * u) < 1e-7);
        }
    }
}

TEST_CASE("pinned profile is a shifted free-space soliton") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        for (double t : {0.05, 0.5, 0.95}) {
            const double k = eps.squared() / 4.0 + t * (0.75 - eps.squared() / 4.0);
            const double xi = xi_by_bisection(eps.value(), k);
            CHECK(shift_xi(eps, k) == doctest::Approx(xi).epsilon(1e-10));
            const SolitonSpec spec(eps, k, Branch::Lower);
            for (double x : {0.0, 0.3, -2.0}) {
                CHECK(eval_profile(spec, x) == doctest::Approx(free_space_profile(k, std::abs(x) + xi)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("shift vanishes with the coupling") {
    const double k = 0.5;
    double prev = shift_xi(CouplingStrength(0.2), k);
    for (double e : {0.1, 0.05, 0.025}) {
        const double xi = shift_xi(CouplingStrength(e), k);
        CHECK(xi > 0.0);
        CHECK(xi < prev);
        prev = xi;
    }
}

TEST_CASE("integration constant from the explicit radicals matches the anchored peak") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const double kbar = fold_point(eps);
        for (double t : {0.05, 0.5, 0.95}) {
            const double k = 0.75 + t * (kbar - 0.75);
            for (Branch b : {Branch::Lower, Branch::Upper}) {
                const ClosedFormProfile p(SolitonSpec(eps, k, b));
                REQUIRE(p.integ_const_c());
                CHECK(integration_constant_c(eps, k, b) == doctest::Approx(*p.integ_const_c()).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("regime B approaches the front as k decreases to 3/4") {
    const CouplingStrength eps(0.5 * kSqrt3);
    const auto front = SolitonSpec::front(eps);
    const SolitonSpec near(eps, 0.75 + 1e-9, Branch::Lower);
    for (double x : {0.0, 0.5, 3.0}) CHECK(eval_profile(near, x) == doctest::Approx(eval_profile(front, x)).epsilon(1e-6));
}

TEST_CASE("free-space profile") {
    const double k = 0.4;
    const double S = std::sqrt(1.0 - 4.0 * k / 3.0);
    for (double x : {0.0, 0.7, 3.0}) {
        const double ref = std::sqrt(2.0 * k / (1.0 + S * std::cosh(2.0 * std::sqrt(k) * x)));
        CHECK(free_space_profile(k, x) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK_THROWS_AS(free_space_profile(0.75, 0.0), DomainError);
}
