#pragma once

#include <algorithm>
#include <vector>

#include "echelon/rref.hpp"

namespace echelon {

/**
 * A rank-r matrix rearranged so an invertible r x r block W leads:
 *
 *     P_r * A * P_c = [W H; J K]
 *
 * row_perm and col_perm hold the selection orders (pivot rows and columns
 * first); as matrices, P_r has a 1 at (i, row_perm[i]) and P_c = (matrix of
 * col_perm) transposed, which permuted() applies for you.
 */
template <Scalar T>
struct BlockPartition {
    Matrix<T> W;  // r x r, invertible
    Matrix<T> H;  // r x (n - r)
    Matrix<T> J;  // (m - r) x r
    Matrix<T> K;  // (m - r) x (n - r)
    Permutation row_perm;
    Permutation col_perm;

    std::size_t r() const { return W.rows(); }
};

namespace detail {

/// P_r * a * P_c for selection orders: row i of the result is row
/// row_perm[i] of a, column j is column col_perm[j].
template <Scalar T>
Matrix<T> gather(const Matrix<T>& a, const Permutation& row_perm, const Permutation& col_perm) {
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(row_perm[i], col_perm[j]);
    return out;
}

inline std::vector<std::size_t> extend_selection(std::vector<std::size_t> chosen, std::size_t total) {
    std::vector<bool> used(total, false);
    for (std::size_t i : chosen) used[i] = true;
    for (std::size_t i = 0; i < total; ++i)
        if (!used[i]) chosen.push_back(i);
    return chosen;
}

}  // namespace detail

template <Scalar T>
Matrix<T> gathered_view(const Matrix<T>& a, const BlockPartition<T>& part) {
    return detail::gather(a, part.row_perm, part.col_perm);
}

/**
 * Reduces [W H; J K] in one block step: the r leading rows yield [I  W^-1 H]
 * via exact elimination on [W | H] (W is never inverted explicitly), and the
 * trailing m - r rows are verified to vanish, i.e. [J K] = J W^-1 [W H].
 * Returns the echelon form of the permuted matrix, whose F is W^-1 H.
 *
 * Throws SingularBlock when W is not invertible under the policy, and
 * RankMismatch when the trailing rows do not vanish (the matrix has rank
 * greater than r).
 */
template <Scalar T>
EchelonForm<T> block_eliminate(const Matrix<T>& a, const Permutation& p_r, const Permutation& p_c, std::size_t r,
                               ZeroPolicy policy = {}) {
    if (p_r.size() != a.rows() || p_c.size() != a.cols())
        throw DimensionMismatch("permutation sizes " + std::to_string(p_r.size()) + ", " + std::to_string(p_c.size()) +
                                " for a " + std::to_string(a.rows()) + " x " + std::to_string(a.cols()) + " matrix");
    if (r > std::min(a.rows(), a.cols()))
        throw WrongCardinality("block size " + std::to_string(r) + " exceeds matrix dimensions");

    const std::size_t m = a.rows(), n = a.cols();
    Matrix<T> b = detail::gather(a, p_r, p_c);

    std::vector<std::size_t> lead = index_range(r);
    std::vector<std::size_t> tail_rows, tail_cols;
    for (std::size_t i = r; i < m; ++i) tail_rows.push_back(i);
    for (std::size_t j = r; j < n; ++j) tail_cols.push_back(j);

    Matrix<T> wh = submatrix(b, lead, index_range(n));
    EchelonForm<T> reduced = rref(wh, policy);
    if (reduced.rank < r || reduced.pivot_cols != lead) throw SingularBlock();
    Matrix<T> f = std::move(reduced.F);

    Matrix<T> j_block = submatrix(b, tail_rows, lead);
    Matrix<T> k_block = submatrix(b, tail_rows, tail_cols);
    Matrix<T> predicted = matmul(j_block, f);
    double residual_scale = std::max(k_block.max_abs(), predicted.max_abs());
    for (std::size_t i = 0; i + r < m; ++i)
        for (std::size_t j = 0; j + r < n; ++j) {
            T residual = k_block(i, j) - predicted(i, j);
            if (!is_zero(residual, residual_scale, policy)) throw RankMismatch();
        }

    EchelonForm<T> out;
    out.rank = r;
    out.pivot_cols = lead;
    out.P = Permutation::identity(n);
    out.Z = Matrix<T>(m, n);
    for (std::size_t i = 0; i < r; ++i) out.Z(i, i) = scalar_traits<T>::one();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j + r < n; ++j) out.Z(i, r + j) = f(i, j);
    out.F = std::move(f);
    out.op_count = reduced.op_count;
    out.pivot_product = reduced.pivot_product;
    return out;
}

/**
 * Locates an invertible r x r block by elimination: the pivot rows and pivot
 * columns of rref(A) cross at an invertible W, which row and column
 * selections move to the upper left corner.
 */
template <Scalar T>
BlockPartition<T> find_invertible_block(const Matrix<T>& a, ZeroPolicy policy = {}) {
    RrefBuilder<T> builder(a, policy);
    while (!builder.done()) builder.consume_column();
    const std::size_t r = builder.rank_so_far();

    std::vector<std::size_t> pivot_rows(builder.row_origin().begin(), builder.row_origin().begin() + r);
    std::vector<std::size_t> rest(builder.row_origin().begin() + r, builder.row_origin().end());
    std::sort(rest.begin(), rest.end());
    pivot_rows.insert(pivot_rows.end(), rest.begin(), rest.end());

    std::vector<std::size_t> cols = detail::extend_selection(builder.pivot_cols_so_far(), a.cols());

    BlockPartition<T> out;
    out.row_perm = Permutation(pivot_rows);
    out.col_perm = Permutation(cols);
    Matrix<T> b = detail::gather(a, out.row_perm, out.col_perm);

    std::vector<std::size_t> lead = index_range(r);
    std::vector<std::size_t> tail_rows, tail_cols;
    for (std::size_t i = r; i < a.rows(); ++i) tail_rows.push_back(i);
    for (std::size_t j = r; j < a.cols(); ++j) tail_cols.push_back(j);
    out.W = submatrix(b, lead, lead);
    out.H = submatrix(b, lead, tail_cols);
    out.J = submatrix(b, tail_rows, lead);
    out.K = submatrix(b, tail_rows, tail_cols);
    return out;
}

template <Scalar T>
struct IntersectionCheck {
    Matrix<T> W;
    bool invertible = false;
};

/**
 * The crossing of r independent rows with r independent columns of a rank-r
 * matrix. Validates the hypotheses itself (via elimination ranks of the row
 * and column selections) rather than trusting the caller, because a dependent
 * selection would masquerade as a counterexample to the invertibility of W.
 */
template <Scalar T>
IntersectionCheck<T> intersection_check(const Matrix<T>& a, const std::vector<std::size_t>& row_idx,
                                        const std::vector<std::size_t>& col_idx, ZeroPolicy policy = {}) {
    const std::size_t r = rref(a, policy).rank;
    if (row_idx.size() != r || col_idx.size() != r)
        throw WrongCardinality(std::to_string(row_idx.size()) + " rows and " + std::to_string(col_idx.size()) +
                               " columns given; the rank is " + std::to_string(r));
    if (rref(take_rows(a, row_idx), policy).rank != r) throw DependentRowsGiven();
    if (rref(take_cols(a, col_idx), policy).rank != r) throw DependentColumnsGiven();

    IntersectionCheck<T> out;
    out.W = submatrix(a, row_idx, col_idx);
    out.invertible = rref(out.W, policy).rank == r;
    return out;
}

}  // namespace echelon
