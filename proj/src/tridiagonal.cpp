#include "cqsoliton/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cqsoliton/errors.hpp"

namespace cqsoliton {

void SymmetricTridiagonal::check() const {
    if (diagonal.empty()) throw DomainError("tridiagonal matrix must be non-empty");
    if (off_diagonal.size() + 1 != diagonal.size()) {
        throw DomainError("off-diagonal must have exactly n - 1 entries");
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(diagonal.begin(), diagonal.end(), finite) ||
        !std::all_of(off_diagonal.begin(), off_diagonal.end(), finite)) {
        throw DomainError("tridiagonal matrix has non-finite entries");
    }
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
    // Signs of the LDL^T pivots of (T - x I); a zero pivot is nudged off zero.
    const std::size_t n = t.size();
    const double tiny = std::numeric_limits<double>::min();
    std::size_t count = 0;
    double q = t.diagonal[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
        if (i + 1 == n) break;
        const double e = t.off_diagonal[i];
        q = t.diagonal[i + 1] - x - e * e / q;
    }
    return count;
}

namespace {

std::pair<double, double> gershgorin(const SymmetricTridiagonal& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off_diagonal[i - 1]);
        if (i + 1 < n) r += std::abs(t.off_diagonal[i]);
        lo = std::min(lo, t.diagonal[i] - r);
        hi = std::max(hi, t.diagonal[i] + r);
    }
    const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    return {lo - pad, hi + pad};
}

}  // namespace

std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, std::size_t m, double abs_tol) {
    t.check();
    m = std::min(m, t.size());
    const auto [glo, ghi] = gershgorin(t);
    std::vector<double> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        // The (i+1)-th eigenvalue is the smallest x with count(x) > i.
        double lo = out.empty() ? glo : out.back() - abs_tol;
        double hi = ghi;
        lo = std::max(lo, glo);
        while (hi - lo > abs_tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (sturm_count(t, mid) > i) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue) {
    t.check();
    const std::size_t n = t.size();
    const auto [glo, ghi] = gershgorin(t);
    // Shift slightly off the eigenvalue so the solve stays non-singular.
    const double shift = eigenvalue - 1e-10 * std::max(1.0, ghi - glo);
    std::vector<double> lower(n), diag(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = t.diagonal[i] - shift;
        if (i > 0) lower[i] = t.off_diagonal[i - 1];
        if (i + 1 < n) upper[i] = t.off_diagonal[i];
    }
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int it = 0; it < 4; ++it) {
        v = solve_twisted(lower, diag, upper, v, n / 2);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("inverse iteration breakdown");
        for (double& x : v) x /= norm;
    }
    return v;
}

std::vector<double> solve_twisted(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs, std::size_t meet) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n || meet >= n) {
        throw DomainError("solve_twisted: inconsistent sizes");
    }
    const auto pivot_check = [](double p, std::size_t row) {
        if (p == 0.0 || !std::isfinite(p)) {
            throw NumericalError("singular tridiagonal system: zero pivot at row " + std::to_string(row));
        }
    };
    // Top-down: rows i < meet become  dt[i] x[i] + upper[i] x[i+1] = rt[i].
    std::vector<double> dt(n), rt(n), db(n), rb(n);
    for (std::size_t i = 0; i < meet; ++i) {
        dt[i] = diag[i];
        rt[i] = rhs[i];
        if (i > 0) {
            const double f = lower[i] / dt[i - 1];
            dt[i] -= f * upper[i - 1];
            rt[i] -= f * rt[i - 1];
        }
        pivot_check(dt[i], i);
    }
    // Bottom-up: rows i > meet become  lower[i] x[i-1] + db[i] x[i] = rb[i].
    for (std::size_t i = n - 1; i > meet; --i) {
        db[i] = diag[i];
        rb[i] = rhs[i];
        if (i + 1 < n) {
            const double f = upper[i] / db[i + 1];
            db[i] -= f * lower[i + 1];
            rb[i] -= f * rb[i + 1];
        }
        pivot_check(db[i], i);
    }
    double d = diag[meet];
    double r = rhs[meet];
    if (meet > 0) {
        const double f = lower[meet] / dt[meet - 1];
        d -= f * upper[meet - 1];
        r -= f * rt[meet - 1];
    }
    if (meet + 1 < n) {
        const double f = upper[meet] / db[meet + 1];
        d -= f * lower[meet + 1];
        r -= f * rb[meet + 1];
    }
    pivot_check(d, meet);

    std::vector<double> x(n);
    x[meet] = r / d;
    for (std::size_t i = meet; i-- > 0;) x[i] = (rt[i] - upper[i] * x[i + 1]) / dt[i];
    for (std::size_t i = meet + 1; i < n; ++i) x[i] = (rb[i] - lower[i] * x[i - 1]) / db[i];
    return x;
}

}  // namespace cqsoliton
