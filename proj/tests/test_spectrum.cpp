#include <cmath>

#include "cqsoliton/bifurcation.hpp"
#include "cqsoliton/spectrum.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cqsoliton;

namespace {

const Grid& box() {
    static const Grid g = Grid::build(-40.0, 40.0, 3200);
    return g;
}

}  // namespace

TEST_CASE("operator assembly") {
    const CouplingStrength eps(0.5 * kSqrt3);
    const SolitonSpec spec(eps, 0.5, Branch::Lower);
    const auto op = assemble_operator(spec, box());
    const double h = box().h();
    REQUIRE(op.matrix.size() == 3199);
    for (double e : op.matrix.off_diagonal) CHECK(e == -1.0 / (h * h));
    const std::size_t n = op.matrix.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(op.matrix.diagonal[i] == op.matrix.diagonal[n - 1 - i]);
    const double u0 = eval_profile(spec, 0.0);
    const double s = u0 * u0;
    CHECK(op.matrix.diagonal[op.origin_row()] ==
          doctest::Approx(2.0 / (h * h) + 0.5 - (6.0 - 5.0 * s) * s - eps.value() / h).epsilon(1e-14));
}

TEST_CASE("zero profile: discrete Laplacian and delta well") {
    const auto& g = box();
    const std::vector<double> zero(g.nodes(), 0.0);
    const double L = g.x_max() - g.x_min();
    const double h = g.h();
    for (double k : {0.2, 0.6}) {
        const auto ev = lowest_eigenvalues(assemble_matrix(k, 0.0, g, zero), 1);
        const double s = std::sin(M_PI * h / (2.0 * L));
        CHECK(std::abs(ev[0] - (k + 4.0 / (h * h) * s * s)) < 1e-10);
    }
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const SolitonSpec spec(eps, 0.5 * (eps.squared() / 4.0 + 0.75), Branch::Lower);
        const auto op = assemble_operator(spec, g, zero);
        CHECK(std::abs(lowest_eigenvalues(op, 1)[0] - (spec.k() - eps.squared() / 4.0)) < 5e-3);
        CHECK(morse_index(op) == 0);
    }
}

TEST_CASE("Morse indices on the two branches") {
    const CouplingStrength eps(0.5 * kSqrt3);
    CHECK(morse_index(SolitonSpec(eps, 0.5, Branch::Lower), box()) == 1);
    CHECK(morse_index(SolitonSpec(eps, 0.9, Branch::Upper), box()) == 0);

    SUBCASE("constant along each branch") {
        const Grid g = Grid::build(-40.0, 40.0, 1600);
        for (double s : {0.1, 0.5, 0.9}) {
            const CouplingStrength e(s * kSqrt3);
            const double lo = e.squared() / 4.0;
            const double kbar = fold_point(e);
            for (int i = 1; i <= 20; ++i) {
                const double t = i / 21.0;
                const double kl = lo + t * (kbar - 1e-3 - lo);
                if (std::abs(kl - 0.75) > 1e-9) CHECK(morse_index(SolitonSpec(e, kl, Branch::Lower), g) == 1);
                const double ku = 0.75 + t * (kbar - 1e-3 - 0.75);
                CHECK(morse_index(SolitonSpec(e, ku, Branch::Upper), g) == 0);
            }
        }
    }
}

TEST_CASE("fold kernel") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const auto r = fold_kernel_check(eps, box());
        CHECK(r.zero_mode_gap < 1e-2);
        REQUIRE(r.kernel_overlap);
        CHECK(*r.kernel_overlap > 0.999);

        const double k = 0.5 * (0.75 + fold_point(eps));
        const auto lower = lowest_eigenvalues(assemble_operator(SolitonSpec(eps, k, Branch::Lower), box()), 1);
        const auto upper = lowest_eigenvalues(assemble_operator(SolitonSpec(eps, k, Branch::Upper), box()), 1);
        CHECK(lower[0] < 0.0);
        CHECK(upper[0] > 0.0);
    }
}

TEST_CASE("eigenvalues converge at second order") {
    const SolitonSpec spec(CouplingStrength(0.5 * kSqrt3), 0.5, Branch::Lower);
    std::vector<std::vector<double>> ev;
    for (std::size_t J : {800, 1600, 3200}) ev.push_back(lowest_eigenvalues(assemble_operator(spec, Grid::build(-40.0, 40.0, J)), 3));
    for (std::size_t i = 0; i < 3; ++i) {
        const double d1 = std::abs(ev[0][i] - ev[1][i]);
        const double d2 = std::abs(ev[1][i] - ev[2][i]);
        CAPTURE(i);
        CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.2));
    }
}

TEST_CASE("continuous spectrum approaches k as the box grows") {
    const CouplingStrength eps(0.5 * kSqrt3);
    const SolitonSpec spec(eps, 0.9, Branch::Upper);
    const auto small = lowest_eigenvalues(assemble_operator(spec, Grid::build(-40.0, 40.0, 3200)), 4);
    const auto large = lowest_eigenvalues(assemble_operator(spec, Grid::build(-80.0, 80.0, 6400)), 4);
    // Above the discrete eigenvalues, box modes sit just above k and move down towards it.
    CHECK(small.back() > spec.k());
    CHECK(large.back() > spec.k());
    CHECK(large.back() - spec.k() < small.back() - spec.k());
}

TEST_CASE("fold transversality integral") {
    for (double s : {0.1, 0.5, 0.9}) {
        const CouplingStrength eps(s * kSqrt3);
        const auto f = f_integral(eps);
        CHECK(f.value > 0.0);
        CHECK(std::abs(f.value - f_integral(eps, 1e-10).value) < 1e-10);

        const auto fold = SolitonSpec::fold(eps);
        const ClosedFormProfile p(fold);
        const auto integrand = [&](double x) {
            const double u = p.value(x);
            const double du = std::abs(x == 0.0 ? p.derivative_at_origin(Side::Right) : p.derivative(x));
            return (5.0 * u * u - 3.0) * u * du * du * du;
        };
        CHECK(f.value == doctest::Approx(2.0 * oracle::simpson(integrand, 0.0, 40.0, 200000)).epsilon(1e-9));
    }
}

TEST_CASE("stability verdicts") {
    const CouplingStrength eps(0.5 * kSqrt3);
    const auto lower = classify_stability(SolitonSpec(eps, 0.5, Branch::Lower), box());
    CHECK(lower.stable);
    CHECK(lower.mechanism == Mechanism::VKSlope);
    CHECK(lower.morse_index == 1);
    const auto upper = classify_stability(SolitonSpec(eps, 0.9, Branch::Upper), box());
    CHECK(upper.stable);
    CHECK(upper.mechanism == Mechanism::PositiveSpectrum);
    const auto fold = classify_stability(SolitonSpec::fold(eps), box());
    CHECK(fold.stable);
    CHECK(fold.mechanism == Mechanism::FoldNeighborhood);
    REQUIRE(fold.fold_evidence);
    CHECK(*fold.fold_evidence->kernel_overlap > 0.999);
    const auto front = classify_stability(SolitonSpec::front(eps), box());
    CHECK(front.stable);
    CHECK(front.mechanism == Mechanism::VKSlope);
    CHECK(to_string(Mechanism::PositiveSpectrum) == "PositiveSpectrum");
}
