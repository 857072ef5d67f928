#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "echelon/matrix.hpp"

namespace echelon {

/**
 * Arithmetic performed by an elimination run: one mult and one add_sub per
 * eliminated entry update, one div per scaled entry, one row_swap per
 * exchange. Comparisons and zero tests are free; operations on exact zeros
 * are skipped and not counted.
 */
struct OpCount {
    std::uint64_t mults = 0;
    std::uint64_t divs = 0;
    std::uint64_t add_subs = 0;
    std::uint64_t row_swaps = 0;

    std::uint64_t arithmetic_total() const { return mults + divs + add_subs; }

    OpCount& operator+=(const OpCount& o) {
        mults += o.mults;
        divs += o.divs;
        add_subs += o.add_subs;
        row_swaps += o.row_swaps;
        return *this;
    }

    friend bool operator==(const OpCount&, const OpCount&) = default;
};

enum class PivotRule { FirstNonzero, LargestMagnitude };

/// Exact arithmetic pivots deterministically on the first nonzero; rounded
/// arithmetic prefers the largest magnitude for stability.
inline PivotRule default_pivot_rule(const ZeroPolicy& policy) {
    return policy.mode == ZeroMode::Exact ? PivotRule::FirstNonzero : PivotRule::LargestMagnitude;
}

// --- single row operations ---

template <Scalar T>
struct SubtractMultiple {
    std::size_t src_row;
    std::size_t dst_row;
    T factor;
};

struct SwapRows {
    std::size_t first;
    std::size_t second;
};

template <Scalar T>
struct ScaleRow {
    std::size_t row;
    T divisor;  // the row is divided by this
};

template <Scalar T>
using RowOperation = std::variant<SubtractMultiple<T>, SwapRows, ScaleRow<T>>;

/// Applies one invertible row operation, returning the transformed matrix and
/// charging the caller's counter when one is supplied.
template <Scalar T>
Matrix<T> row_op(const Matrix<T>& m, const RowOperation<T>& op, OpCount* ops = nullptr) {
    Matrix<T> out = m;
    OpCount local;
    std::visit(
        [&](const auto& o) {
            using Op = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<Op, SubtractMultiple<T>>) {
                if (o.src_row >= m.rows() || o.dst_row >= m.rows())
                    throw IndexOutOfRange("row operation rows " + std::to_string(o.src_row) + ", " +
                                          std::to_string(o.dst_row));
                if (o.src_row == o.dst_row) throw IndexOutOfRange("source and destination rows must differ");
                if (scalar_traits<T>::exact_zero(o.factor)) return;
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (scalar_traits<T>::exact_zero(m(o.src_row, j))) continue;
                    out(o.dst_row, j) = out(o.dst_row, j) - o.factor * m(o.src_row, j);
                    ++local.mults;
                    ++local.add_subs;
                }
            } else if constexpr (std::is_same_v<Op, SwapRows>) {
                out.swap_rows(o.first, o.second);
                if (o.first != o.second) ++local.row_swaps;
            } else {
                if (o.row >= m.rows()) throw IndexOutOfRange("row " + std::to_string(o.row));
                if (scalar_traits<T>::exact_zero(o.divisor)) throw ZeroScaleDivisor();
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    if (scalar_traits<T>::exact_zero(m(o.row, j))) continue;
                    out(o.row, j) = out(o.row, j) / o.divisor;
                    ++local.divs;
                }
            }
        },
        op);
    if (ops) *ops += local;
    return out;
}

/**
 * Result of full reduction: Z = [I F; 0 0] * P with the r x r identity in the
 * pivot columns. F maps the pivot columns onto the dependent columns, P
 * restores pivot-first column order to the original order, and E (tracked on
 * request) is the invertible product of the row operations, E * A = Z.
 */
template <Scalar T>
struct EchelonForm {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    Matrix<T> F;                  // rank x (cols - rank)
    Permutation P;                // pivot-first column order
    Matrix<T> Z;                  // same shape as the input
    std::optional<Matrix<T>> E;   // rows x rows, E * A = Z
    OpCount op_count;
    T pivot_product = scalar_traits<T>::one();  // with (-1)^row_swaps this is det(A) for square full-rank input

    std::vector<std::size_t> free_cols() const {
        std::vector<std::size_t> free;
        std::size_t next_pivot = 0;
        for (std::size_t j = 0; j < Z.cols(); ++j) {
            if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == j)
                ++next_pivot;
            else
                free.push_back(j);
        }
        return free;
    }
};

/**
 * Column-by-column reduction. After k consumed columns the leading k columns
 * (in pivot-first order) are already in reduced form; consume_column decides
 * whether the next column joins the identity block (independent, new pivot)
 * or the F block (dependent), applying the row operations eagerly across the
 * trailing columns.
 */
template <Scalar T>
class RrefBuilder {
public:
    explicit RrefBuilder(Matrix<T> a, ZeroPolicy policy = {}, std::optional<PivotRule> rule = std::nullopt,
                         bool track_elimination = false)
        : w_(std::move(a)),
          policy_(policy),
          rule_(rule.value_or(default_pivot_rule(policy))),
          row_origin_(index_range(w_.rows())),
          pivot_product_(scalar_traits<T>::one()) {
        if (track_elimination) e_ = Matrix<T>::identity(w_.rows());
    }

    std::size_t columns_total() const { return w_.cols(); }
    std::size_t columns_consumed() const { return consumed_; }
    std::size_t rank_so_far() const { return rank_; }
    const std::vector<std::size_t>& pivot_cols_so_far() const { return pivot_cols_; }
    const Matrix<T>& working() const { return w_; }
    const OpCount& op_count() const { return ops_; }
    bool done() const { return consumed_ == w_.cols(); }

    /// Original row index now living at each working-row position.
    const std::vector<std::size_t>& row_origin() const { return row_origin_; }

    void consume_column() {
        if (done()) throw NoColumnsRemaining();
        const std::size_t col = consumed_;
        const std::size_t m = w_.rows();

        // Scale context for the zero decision: the whole current column, so a
        // residual far below the column's own magnitude reads as zero.
        double scale = 0.0;
        if (policy_.mode == ZeroMode::Thresholded)
            for (std::size_t i = 0; i < m; ++i)
                scale = std::max(scale, scalar_traits<T>::magnitude(w_(i, col)));

        std::size_t pivot_row = m;
        if (rule_ == PivotRule::FirstNonzero) {
            for (std::size_t i = rank_; i < m; ++i)
                if (!is_zero(w_(i, col), scale, policy_)) {
                    pivot_row = i;
                    break;
                }
        } else {
            double best = -1.0;
            for (std::size_t i = rank_; i < m; ++i) {
                double mag = scalar_traits<T>::magnitude(w_(i, col));
                if (!is_zero(w_(i, col), scale, policy_) && mag > best) {
                    best = mag;
                    pivot_row = i;
                }
            }
        }

        if (pivot_row == m) {
            // Dependent column: the part below the rank joins the zero block.
            // In thresholded mode that clears sub-threshold residue.
            for (std::size_t i = rank_; i < m; ++i) w_(i, col) = scalar_traits<T>::zero();
            ++consumed_;
            return;
        }

        if (pivot_row != rank_) {
            w_.swap_rows(pivot_row, rank_);
            if (e_) e_->swap_rows(pivot_row, rank_);
            std::swap(row_origin_[pivot_row], row_origin_[rank_]);
            ++ops_.row_swaps;
        }

        const T pivot = w_(rank_, col);
        pivot_product_ = pivot_product_ * pivot;

        w_(rank_, col) = scalar_traits<T>::one();
        for (std::size_t j = col + 1; j < w_.cols(); ++j) {
            if (scalar_traits<T>::exact_zero(w_(rank_, j))) continue;
            w_(rank_, j) = w_(rank_, j) / pivot;
            ++ops_.divs;
        }
        if (e_)
            for (std::size_t j = 0; j < m; ++j)
                if (!scalar_traits<T>::exact_zero((*e_)(rank_, j))) (*e_)(rank_, j) = (*e_)(rank_, j) / pivot;

        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank_) continue;
            const T factor = w_(i, col);
            if (scalar_traits<T>::exact_zero(factor)) continue;
            w_(i, col) = scalar_traits<T>::zero();
            for (std::size_t j = col + 1; j < w_.cols(); ++j) {
                if (scalar_traits<T>::exact_zero(w_(rank_, j))) continue;
                w_(i, j) = w_(i, j) - factor * w_(rank_, j);
                ++ops_.mults;
                ++ops_.add_subs;
            }
            if (e_)
                for (std::size_t j = 0; j < m; ++j)
                    if (!scalar_traits<T>::exact_zero((*e_)(rank_, j)))
                        (*e_)(i, j) = (*e_)(i, j) - factor * (*e_)(rank_, j);
        }

        pivot_cols_.push_back(col);
        ++rank_;
        ++consumed_;
    }

    /// Consumes any remaining columns and assembles the result.
    EchelonForm<T> finish() {
        while (!done()) consume_column();

        EchelonForm<T> out;
        out.rank = rank_;
        out.pivot_cols = pivot_cols_;
        out.Z = w_;
        out.op_count = ops_;
        out.pivot_product = pivot_product_;

        std::vector<std::size_t> order = pivot_cols_;
        std::vector<std::size_t> free;
        std::size_t next_pivot = 0;
        for (std::size_t j = 0; j < w_.cols(); ++j) {
            if (next_pivot < pivot_cols_.size() && pivot_cols_[next_pivot] == j)
                ++next_pivot;
            else
                free.push_back(j);
        }
        order.insert(order.end(), free.begin(), free.end());
        out.P = Permutation(order);

        out.F = Matrix<T>(rank_, free.size());
        for (std::size_t i = 0; i < rank_; ++i)
            for (std::size_t j = 0; j < free.size(); ++j) out.F(i, j) = w_(i, free[j]);

        if (e_) out.E = std::move(*e_);
        return out;
    }

private:
    Matrix<T> w_;
    ZeroPolicy policy_;
    PivotRule rule_;
    std::vector<std::size_t> row_origin_;
    std::vector<std::size_t> pivot_cols_;
    std::optional<Matrix<T>> e_;
    OpCount ops_;
    T pivot_product_;
    std::size_t rank_ = 0;
    std::size_t consumed_ = 0;
};

/// Reduced row echelon form of any matrix, including empty shapes.
template <Scalar T>
EchelonForm<T> rref(const Matrix<T>& a, ZeroPolicy policy = {}, std::optional<PivotRule> rule = std::nullopt,
                    bool track_elimination = false) {
    return RrefBuilder<T>(a, policy, rule, track_elimination).finish();
}

/// Rebuilds [I F; 0 0] * P from the factored parts; equals Z by construction
/// and serves as the reconstruction check.
template <Scalar T>
Matrix<T> reconstruct_from_echelon(const EchelonForm<T>& ef) {
    const std::size_t m = ef.Z.rows(), n = ef.Z.cols(), r = ef.rank;
    Matrix<T> pivot_first(m, n);
    for (std::size_t i = 0; i < r; ++i) pivot_first(i, i) = scalar_traits<T>::one();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j + r < n; ++j) pivot_first(i, r + j) = ef.F(i, j);
    return apply_col_permutation(pivot_first, ef.P);
}

template <Scalar T>
struct ForwardElimination {
    Matrix<T> U;  // row echelon, not reduced
    Matrix<T> c;  // right-hand side carried through the same operations
    OpCount op_count;
};

/**
 * Plain forward elimination: stops at a triangular (row echelon) system with
 * the same solutions, never eliminating above a pivot and never scaling pivot
 * rows. The cheaper path when only a solve is wanted.
 */
template <Scalar T>
ForwardElimination<T> gauss_forward(const Matrix<T>& a, const Matrix<T>& b, ZeroPolicy policy = {}) {
    if (b.rows() != a.rows())
        throw DimensionMismatch("right-hand side has " + std::to_string(b.rows()) + " rows for " +
                                std::to_string(a.rows()) + " equations");
    const std::size_t m = a.rows(), n = a.cols(), width = n + b.cols();
    Matrix<T> w = hcat(a, b);
    OpCount ops;

    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < m; ++col) {
        double scale = 0.0;
        if (policy.mode == ZeroMode::Thresholded)
            for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, scalar_traits<T>::magnitude(w(i, col)));

        std::size_t pivot_row = m;
        for (std::size_t i = r; i < m; ++i)
            if (!is_zero(w(i, col), scale, policy)) {
                pivot_row = i;
                break;
            }
        if (pivot_row == m) continue;

        if (pivot_row != r) {
            w.swap_rows(pivot_row, r);
            ++ops.row_swaps;
        }
        const T& pivot = w(r, col);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (scalar_traits<T>::exact_zero(w(i, col))) continue;
            T factor = w(i, col) / pivot;
            ++ops.divs;
            w(i, col) = scalar_traits<T>::zero();
            for (std::size_t j = col + 1; j < width; ++j) {
                if (scalar_traits<T>::exact_zero(w(r, j))) continue;
                w(i, j) = w(i, j) - factor * w(r, j);
                ++ops.mults;
                ++ops.add_subs;
            }
        }
        ++r;
    }

    ForwardElimination<T> out;
    out.U = submatrix(w, index_range(m), index_range(n));
    std::vector<std::size_t> rhs_cols(b.cols());
    std::iota(rhs_cols.begin(), rhs_cols.end(), n);
    out.c = submatrix(w, index_range(m), rhs_cols);
    out.op_count = ops;
    return out;
}

/// Solves U x = c for square upper triangular U with nonzero diagonal.
template <Scalar T>
Matrix<T> back_substitute(const Matrix<T>& u, const Matrix<T>& c, ZeroPolicy policy = {}, OpCount* ops = nullptr) {
    if (u.rows() != u.cols()) throw NotSquare();
    if (c.rows() != u.rows() || c.cols() != 1)
        throw DimensionMismatch("right-hand side " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                " for a " + std::to_string(u.rows()) + "-row triangular system");
    const std::size_t n = u.rows();
    OpCount local;

    for (std::size_t i = 0; i < n; ++i) {
        double scale = 0.0;
        if (policy.mode == ZeroMode::Thresholded)
            for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, scalar_traits<T>::magnitude(u(k, i)));
        if (is_zero(u(i, i), scale, policy)) throw SingularTriangular(i);
    }

    Matrix<T> x(n, 1);
    for (std::size_t ii = n; ii-- > 0;) {
        T sum = c(ii, 0);
        for (std::size_t j = ii + 1; j < n; ++j) {
            if (scalar_traits<T>::exact_zero(u(ii, j)) || scalar_traits<T>::exact_zero(x(j, 0))) continue;
            sum = sum - u(ii, j) * x(j, 0);
            ++local.mults;
            ++local.add_subs;
        }
        if (!scalar_traits<T>::exact_zero(sum)) {
            x(ii, 0) = sum / u(ii, ii);
            ++local.divs;
        }
    }
    if (ops) *ops += local;
    return x;
}

}  // namespace echelon
