#pragma once

#include <cstdint>
#include <vector>

#include "echelon/matrix.hpp"
#include "echelon/rational.hpp"
#include "echelon/rref.hpp"

namespace echelon {

/**
 * Brute-force ground truth, deliberately independent of the elimination
 * engine: determinants come from cofactor expansion and rank from submatrix
 * determinant enumeration, so the two can cross-check each other.
 */

namespace detail {

template <Scalar T>
T det_expand(const Matrix<T>& m, const std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
    if (rows.size() == 1) return m(rows[0], cols[0]);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    T acc = scalar_traits<T>::zero();
    bool negative = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const T& entry = m(rows[0], cols[k]);
        if (!scalar_traits<T>::exact_zero(entry)) {
            std::size_t removed = cols[k];
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
            T minor = det_expand(m, sub_rows, cols);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), removed);
            T term = entry * minor;
            acc = negative ? acc - term : acc + term;
        }
        negative = !negative;
    }
    return acc;
}

/// Calls fn with every strictly increasing k-subset of {0..n-1}.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (k > n) return;
    while (true) {
        fn(const_cast<const std::vector<std::size_t>&>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Exact determinant by cofactor expansion along the first row. Guarded to
/// side <= 8; the cost is factorial and larger inputs are a usage bug.
template <Scalar T>
T det_cofactor(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw NotSquare();
    if (m.rows() > 8) throw TooLarge("cofactor determinant limited to side 8, got " + std::to_string(m.rows()));
    if (m.rows() == 0) return scalar_traits<T>::one();
    std::vector<std::size_t> rows = index_range(m.rows());
    std::vector<std::size_t> cols = index_range(m.cols());
    return detail::det_expand(m, rows, cols);
}

/// Largest k such that some k x k submatrix has a nonzero cofactor
/// determinant. Guarded to min(m, n) <= 6.
template <Scalar T>
std::size_t rank_bruteforce(const Matrix<T>& m) {
    std::size_t side = std::min(m.rows(), m.cols());
    if (side > 6) throw TooLarge("brute-force rank limited to min dimension 6, got " + std::to_string(side));
    for (std::size_t k = side; k >= 1; --k) {
        bool found = false;
        detail::for_each_combination(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
            if (found) return;
            detail::for_each_combination(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
                if (found) return;
                if (!scalar_traits<T>::exact_zero(det_cofactor(submatrix(m, rows, cols)))) found = true;
            });
        });
        if (found) return k;
    }
    return 0;
}

/// Deterministic splitmix64 stream; identical output for identical seeds on
/// every platform, unlike <random> distributions.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [lo, hi]; the modulo bias is irrelevant for test data.
    long bounded(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Child stream whose values are independent of later draws from this one.
    SeededRng fork(std::uint64_t salt) { return SeededRng(next() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

private:
    std::uint64_t state_;
};

struct RandomMatrixSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t target_rank = 0;
    long entry_bound = 5;
    std::uint64_t seed = 0;
};

namespace detail {

inline Matrix<Rational> random_integer_matrix(std::size_t rows, std::size_t cols, long bound, SeededRng& rng) {
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(rng.bounded(-bound, bound));
    return m;
}

// The brute-force check where it is feasible; exact elimination for factors
// too large to enumerate. The determinant and rank oracles above stay
// engine-free either way.
inline bool full_rank(const Matrix<Rational>& m, std::size_t r) {
    if (std::min(m.rows(), m.cols()) != r) return false;
    if (m.rows() <= 6 && m.cols() <= 6) return rank_bruteforce(m) == r;
    return rref(m).rank == r;
}

}  // namespace detail

/// Uniform bounded-integer matrix; test and benchmark input data.
inline Matrix<Rational> random_integer_matrix(std::size_t rows, std::size_t cols, long bound, SeededRng& rng) {
    return detail::random_integer_matrix(rows, cols, bound, rng);
}

/// A rows x cols rational matrix of exact rank target_rank, built as a
/// product of two full-rank integer factors. Deterministic per seed.
inline Matrix<Rational> random_rank_r(const RandomMatrixSpec& spec) {
    if (spec.target_rank > std::min(spec.rows, spec.cols))
        throw InvalidSpec("target rank " + std::to_string(spec.target_rank) + " exceeds min dimension " +
                          std::to_string(std::min(spec.rows, spec.cols)));
    if (spec.entry_bound < 1) throw InvalidSpec("entry bound must be at least 1");
    if (spec.target_rank == 0) return Matrix<Rational>::zero(spec.rows, spec.cols);

    SeededRng rng(spec.seed);
    Matrix<Rational> left, right;
    do {
        left = detail::random_integer_matrix(spec.rows, spec.target_rank, spec.entry_bound, rng);
    } while (!detail::full_rank(left, spec.target_rank));
    do {
        right = detail::random_integer_matrix(spec.target_rank, spec.cols, spec.entry_bound, rng);
    } while (!detail::full_rank(right, spec.target_rank));
    return matmul(left, right);
}

}  // namespace echelon
