#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "echelon/rref.hpp"

namespace echelon {

/**
 * A = C * R with C the first r independent columns of A (taken verbatim from
 * A, never reconstructed) and R = [I F] * P the reconstruction coefficients.
 * C has full column rank r, R full row rank r.
 */
template <Scalar T>
struct CRFactorization {
    Matrix<T> C;  // m x r
    Matrix<T> R;  // r x n
    Matrix<T> F;  // r x (n - r)
    Permutation P;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return pivot_cols.size(); }
};

/**
 * X = P^T [-F; I] with A * X = 0. Each column is the special solution that
 * sets one free variable to 1 and the rest to 0, so the rows of X at the free
 * columns form an identity.
 */
template <Scalar T>
struct NullspaceBasis {
    Matrix<T> X;  // n x (n - r)
    std::vector<std::size_t> free_cols;
};

enum class SolveStatus { Unique, Infinite, Inconsistent };

/// Full solution set of A x = b: a particular solution (free variables set to
/// zero) plus every combination of the nullspace basis columns. The basis is
/// always present; it simply has zero columns when the solution is unique.
template <Scalar T>
struct SolveResult {
    SolveStatus status = SolveStatus::Unique;
    std::optional<Matrix<T>> particular;  // n x 1, absent when inconsistent
    NullspaceBasis<T> nullspace;
};

namespace detail {

/// Builds the special-solution basis from the echelon data alone.
template <Scalar T>
NullspaceBasis<T> nullspace_from_parts(std::size_t n, const std::vector<std::size_t>& pivot_cols,
                                       const Matrix<T>& f) {
    const std::size_t r = pivot_cols.size();
    const std::size_t n_free = n - r;

    std::vector<std::size_t> order = pivot_cols;
    std::vector<std::size_t> free;
    std::size_t next_pivot = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == j)
            ++next_pivot;
        else
            free.push_back(j);
    }
    order.insert(order.end(), free.begin(), free.end());

    Matrix<T> stacked(n, n_free);  // [-F; I] in pivot-first row order
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n_free; ++j) stacked(i, j) = -f(i, j);
    for (std::size_t j = 0; j < n_free; ++j) stacked(r + j, j) = scalar_traits<T>::one();

    NullspaceBasis<T> out;
    out.X = apply_row_permutation(stacked, Permutation(order));
    out.free_cols = std::move(free);
    return out;
}

}  // namespace detail

template <Scalar T>
CRFactorization<T> cr_factor(const Matrix<T>& a, ZeroPolicy policy = {}) {
    EchelonForm<T> ef = rref(a, policy);
    CRFactorization<T> out;
    out.C = take_cols(a, ef.pivot_cols);
    out.R = Matrix<T>(ef.rank, a.cols());
    for (std::size_t i = 0; i < ef.rank; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.R(i, j) = ef.Z(i, j);
    out.F = std::move(ef.F);
    out.P = std::move(ef.P);
    out.pivot_cols = std::move(ef.pivot_cols);
    return out;
}

template <Scalar T>
NullspaceBasis<T> nullspace(const Matrix<T>& a, ZeroPolicy policy = {}) {
    EchelonForm<T> ef = rref(a, policy);
    return detail::nullspace_from_parts(a.cols(), ef.pivot_cols, ef.F);
}

/**
 * Reduces the augmented system [A | b]; the same row operations applied to b
 * turn A x = b into Z x = d with the same solutions. A pivot landing in the
 * appended column is exactly an inconsistent row 0 = nonzero.
 */
template <Scalar T>
SolveResult<T> solve(const Matrix<T>& a, const Matrix<T>& b, ZeroPolicy policy = {}) {
    if (b.rows() != a.rows() || b.cols() != 1)
        throw DimensionMismatch("right-hand side " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()) +
                                " for " + std::to_string(a.rows()) + " equations");
    const std::size_t n = a.cols();
    EchelonForm<T> aug = rref(hcat(a, b), policy);

    bool inconsistent = !aug.pivot_cols.empty() && aug.pivot_cols.back() == n;
    std::vector<std::size_t> pivots = aug.pivot_cols;
    if (inconsistent) pivots.pop_back();
    const std::size_t r = pivots.size();

    // The leading n columns of the reduced augmented matrix are rref(A).
    std::vector<std::size_t> free;
    std::size_t next_pivot = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (next_pivot < pivots.size() && pivots[next_pivot] == j)
            ++next_pivot;
        else
            free.push_back(j);
    }
    Matrix<T> f(r, free.size());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < free.size(); ++j) f(i, j) = aug.Z(i, free[j]);

    SolveResult<T> out;
    out.nullspace = detail::nullspace_from_parts(n, pivots, f);
    if (inconsistent) {
        out.status = SolveStatus::Inconsistent;
        return out;
    }
    out.status = r == n ? SolveStatus::Unique : SolveStatus::Infinite;
    Matrix<T> x(n, 1);
    for (std::size_t i = 0; i < r; ++i) x(pivots[i], 0) = aug.Z(i, n);
    out.particular = std::move(x);
    return out;
}

/// Column rank from eliminating A, row rank from independently eliminating
/// A^T. The two are computed separately because their equality is a result to
/// verify, not an assumption.
template <Scalar T>
std::pair<std::size_t, std::size_t> rank_theorem_check(const Matrix<T>& a, ZeroPolicy policy = {}) {
    return {rref(a, policy).rank, rref(a.transpose(), policy).rank};
}

/// Relative residual bound under which a float-mode C * R counts as A.
inline constexpr double cr_residual_rel = 1e-8;

/// Recomputes C * R and compares against A: entry-exact for rationals, max
/// residual within cr_residual_rel * max|A| for floats. Never assumed.
template <Scalar T>
bool cr_verified(const Matrix<T>& a, const CRFactorization<T>& cr) {
    Matrix<T> product = matmul(cr.C, cr.R);
    if constexpr (scalar_traits<T>::is_exact) {
        return product == a;
    } else {
        if (product.rows() != a.rows() || product.cols() != a.cols()) return false;
        double worst = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                worst = std::max(worst, scalar_traits<T>::magnitude(a(i, j) - product(i, j)));
        return worst <= cr_residual_rel * a.max_abs();
    }
}

}  // namespace echelon
