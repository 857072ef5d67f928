#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "echelon/errors.hpp"
#include "echelon/scalar.hpp"

namespace echelon {

/**
 * Dense m x n matrix with value semantics, entries in row-major order.
 * Empty shapes (zero rows or zero columns) are first-class values.
 */
template <Scalar T>
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, scalar_traits<T>::zero()) {}

    Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("inconsistent row lengths in matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::one();
        return m;
    }

    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    /// Single-column matrix from a flat list of entries.
    static Matrix column(std::vector<T> entries) {
        Matrix m;
        m.rows_ = entries.size();
        m.cols_ = 1;
        m.data_ = std::move(entries);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const T& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw IndexOutOfRange("(" + std::to_string(i) + ", " + std::to_string(j) + ") in " +
                                  std::to_string(rows_) + " x " + std::to_string(cols_));
        return (*this)(i, j);
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= rows_) throw IndexOutOfRange("row swap " + std::to_string(i) + ", " + std::to_string(j));
        if (i == j) return;
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Largest entry magnitude; 0 for empty shapes.
    double max_abs() const {
        double best = 0.0;
        for (const T& v : data_) best = std::max(best, scalar_traits<T>::magnitude(v));
        return best;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << m.rows_ << " x " << m.cols_ << " [";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : ", [");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                if (j > 0) os << ", ";
                os << scalar_traits<T>::to_string(m(i, j));
            }
            os << "]";
        }
        return os << "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/**
 * A permutation of n columns (or rows), stored as the pivot-first order:
 * positions[i] is the original index occupied by slot i of that order.
 * As a matrix it has a 1 at (i, positions[i]) and satisfies P * P^T = I.
 */
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
        std::vector<bool> seen(positions_.size(), false);
        for (std::size_t p : positions_) {
            if (p >= positions_.size() || seen[p]) throw InvalidSpec("permutation positions must be a bijection");
            seen[p] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> v(n);
        std::iota(v.begin(), v.end(), std::size_t{0});
        return Permutation(std::move(v));
    }

    std::size_t size() const { return positions_.size(); }
    std::size_t operator[](std::size_t i) const { return positions_[i]; }
    const std::vector<std::size_t>& positions() const { return positions_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < positions_.size(); ++i)
            if (positions_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(positions_.size());
        for (std::size_t i = 0; i < positions_.size(); ++i) inv[positions_[i]] = i;
        return Permutation(std::move(inv));
    }

    /// Explicit 0/1 matrix with a 1 at (i, positions[i]); only for verification products.
    template <Scalar T>
    Matrix<T> to_matrix() const {
        Matrix<T> m(size(), size());
        for (std::size_t i = 0; i < size(); ++i) m(i, positions_[i]) = scalar_traits<T>::one();
        return m;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.positions_ == b.positions_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Permutation& p) {
        os << "[";
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
        return os << "]";
    }

private:
    std::vector<std::size_t> positions_;
};

/// Exact product; inner dimension 0 yields the zero matrix.
template <Scalar T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (scalar_traits<T>::exact_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + aik * b(k, j);
        }
    return c;
}

/// m * P: column i of m lands at original position p[i]. Restores pivot-first
/// columns to their original order.
template <Scalar T>
Matrix<T> apply_col_permutation(const Matrix<T>& m, const Permutation& p) {
    if (p.size() != m.cols()) throw DimensionMismatch("column permutation size " + std::to_string(p.size()) +
                                                      " for " + std::to_string(m.cols()) + " columns");
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i)
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, p[i]) = m(r, i);
    return out;
}

/// P^T * m: row i of m lands at original position p[i]. The row counterpart of
/// apply_col_permutation, so (m * P)^T = apply_row_permutation(m^T, p).
template <Scalar T>
Matrix<T> apply_row_permutation(const Matrix<T>& m, const Permutation& p) {
    if (p.size() != m.rows()) throw DimensionMismatch("row permutation size " + std::to_string(p.size()) + " for " +
                                                      std::to_string(m.rows()) + " rows");
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) out(p[i], c) = m(i, c);
    return out;
}

/// result[i][j] = m[row_idx[i]][col_idx[j]]; both index lists strictly increasing.
template <Scalar T>
Matrix<T> submatrix(const Matrix<T>& m, const std::vector<std::size_t>& row_idx,
                    const std::vector<std::size_t>& col_idx) {
    for (std::size_t i = 1; i < row_idx.size(); ++i)
        if (row_idx[i] <= row_idx[i - 1]) throw NonIncreasingIndices();
    for (std::size_t j = 1; j < col_idx.size(); ++j)
        if (col_idx[j] <= col_idx[j - 1]) throw NonIncreasingIndices();
    if (!row_idx.empty() && row_idx.back() >= m.rows())
        throw IndexOutOfRange("row " + std::to_string(row_idx.back()) + " of " + std::to_string(m.rows()));
    if (!col_idx.empty() && col_idx.back() >= m.cols())
        throw IndexOutOfRange("column " + std::to_string(col_idx.back()) + " of " + std::to_string(m.cols()));
    Matrix<T> out(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j) out(i, j) = m(row_idx[i], col_idx[j]);
    return out;
}

inline std::vector<std::size_t> index_range(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

template <Scalar T>
Matrix<T> take_rows(const Matrix<T>& m, const std::vector<std::size_t>& row_idx) {
    return submatrix(m, row_idx, index_range(m.cols()));
}

template <Scalar T>
Matrix<T> take_cols(const Matrix<T>& m, const std::vector<std::size_t>& col_idx) {
    return submatrix(m, index_range(m.rows()), col_idx);
}

template <Scalar T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("hcat row counts " + std::to_string(a.rows()) + " and " +
                                                      std::to_string(b.rows()));
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

template <Scalar T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("vcat column counts " + std::to_string(a.cols()) + " and " +
                                                      std::to_string(b.cols()));
    Matrix<T> out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

inline Matrix<double> to_double_matrix(const Matrix<Rational>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
    return out;
}

}  // namespace echelon
