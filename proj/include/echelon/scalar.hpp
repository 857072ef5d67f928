#pragma once

#include <cmath>
#include <concepts>
#include <cstdio>
#include <span>
#include <string>

#include "echelon/rational.hpp"

namespace echelon {

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool exact_zero(const Rational& v) { return v.is_zero(); }
    static double magnitude(const Rational& v) { return std::fabs(v.to_double()); }
    static Rational from_long(long v) { return Rational(v); }
    static std::string to_string(const Rational& v) { return v.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool exact_zero(double v) { return v == 0.0; }
    static double magnitude(double v) { return std::fabs(v); }
    static double from_long(long v) { return static_cast<double>(v); }

    /// 17 significant digits: enough for a lossless double round trip.
    static std::string to_string(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

/// A field scalar the elimination engine can run on.
template <typename T>
concept Scalar = requires(const T& a, const T& b) {
    { scalar_traits<T>::zero() } -> std::convertible_to<T>;
    { scalar_traits<T>::one() } -> std::convertible_to<T>;
    { scalar_traits<T>::exact_zero(a) } -> std::convertible_to<bool>;
    { scalar_traits<T>::magnitude(a) } -> std::convertible_to<double>;
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { a == b } -> std::convertible_to<bool>;
};

enum class ZeroMode { Exact, Thresholded };

/**
 * The zero-decision policy.
 *
 * Exact mode: a scalar is zero iff it equals 0 exactly; the context scale is
 * ignored. Thresholded mode: an entry e taken from a column segment s is zero
 * iff |e| <= tol_abs + tol_rel * max|s_i|, which keeps the test invariant
 * under scaling of the input.
 */
struct ZeroPolicy {
    ZeroMode mode = ZeroMode::Exact;
    double tol_abs = 0.0;
    double tol_rel = 0.0;

    static ZeroPolicy exact() { return {ZeroMode::Exact, 0.0, 0.0}; }
    static ZeroPolicy thresholded(double tol_abs = 0.0, double tol_rel = 1e-10) {
        return {ZeroMode::Thresholded, tol_abs, tol_rel};
    }
};

/// Largest magnitude over a column segment; the scale for thresholded tests.
template <Scalar T>
double segment_scale(std::span<const T> segment) {
    double best = 0.0;
    for (const T& v : segment) best = std::max(best, scalar_traits<T>::magnitude(v));
    return best;
}

template <Scalar T>
bool is_zero(const T& e, double scale, const ZeroPolicy& policy) {
    if (policy.mode == ZeroMode::Exact) return scalar_traits<T>::exact_zero(e);
    return scalar_traits<T>::magnitude(e) <= policy.tol_abs + policy.tol_rel * scale;
}

template <Scalar T>
bool is_zero(const T& e, std::span<const T> segment, const ZeroPolicy& policy) {
    if (policy.mode == ZeroMode::Exact) return scalar_traits<T>::exact_zero(e);
    return is_zero(e, segment_scale(segment), policy);
}

}  // namespace echelon
