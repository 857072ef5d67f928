#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "echelon/errors.hpp"

namespace echelon {

/**
 * Exact arbitrary-precision fraction.
 *
 * Always held in canonical form: denominator > 0, gcd(|num|, den) = 1,
 * and zero represented as 0/1. All arithmetic is exact; nothing ever rounds.
 * Values are immutable in practice (operators return new values), cheap to
 * copy for the sizes elimination produces, and safe to share across threads.
 */
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long value) : q_(static_cast<signed long>(value)) {}
    Rational(int value) : q_(static_cast<signed long>(value)) {}

    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    Rational(mpz_class num, mpz_class den = 1) {
        if (den == 0) throw DivisionByZero();
        q_ = mpq_class(std::move(num), std::move(den));
        q_.canonicalize();
    }

    /// Accepts "p", "-p" and "p/q" decimal-integer forms. Returns false on
    /// anything else (including a zero denominator).
    static bool try_parse(std::string_view text, Rational& out) {
        auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!integer_token(num) || !integer_token(den)) return false;
        mpz_class n(std::string(num), 10);
        mpz_class d(std::string(den), 10);
        if (d == 0) return false;
        out = Rational(std::move(n), std::move(d));
        return true;
    }

    static Rational parse(std::string_view text) {
        Rational r;
        if (!try_parse(text, r)) throw ParseError("not a rational: \"" + std::string(text) + "\"");
        return r;
    }

    const mpz_class& numerator() const { return q_.get_num(); }
    const mpz_class& denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    /// Nearest-double conversion; only for display and float-mode thresholds.
    double to_double() const { return q_.get_d(); }

    /// Canonical text form: "p/q", or just "p" when the denominator is 1.
    std::string str() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZero();
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}

    static bool integer_token(std::string_view t) {
        if (!t.empty() && t.front() == '-') t.remove_prefix(1);
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    }

    mpq_class q_;  // canonical: den > 0, gcd(num, den) = 1, zero = 0/1
};

}  // namespace echelon
