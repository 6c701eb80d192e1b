#pragma once

// Symmetric tridiagonal eigenvalues (Sturm bisection, inverse iteration) and
// a twisted linear solve that keeps mirror-symmetric systems exactly even.

#include <cstddef>
#include <span>
#include <vector>

namespace cqsoliton {

struct SymmetricTridiagonal {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size n - 1

    std::size_t size() const noexcept { return diagonal.size(); }
    /// Throws DomainError on a size mismatch or non-finite entries.
    void check() const;
};

/// Number of eigenvalues strictly below x.
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

/// The m smallest eigenvalues in ascending order, each to absolute accuracy
/// `abs_tol`. m is clamped to the matrix size.
std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, std::size_t m, double abs_tol = 1e-11);

/// Unit eigenvector for an (accurate) eigenvalue estimate.
std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue);

/// Solves the general tridiagonal system
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]
/// (lower[0] and upper[n-1] ignored) by eliminating from both ends towards
/// row `meet`. A system that is mirror-symmetric about `meet` yields a
/// solution that is mirror-symmetric to the last bit. Throws NumericalError
/// on a zero pivot.
std::vector<double> solve_twisted(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs, std::size_t meet);

}  // namespace cqsoliton
