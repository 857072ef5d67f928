#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <echelon/oracle.hpp>
#include <echelon/rational.hpp>
#include <echelon/scalar.hpp>

using namespace echelon;

TEST_CASE("fraction arithmetic is exact and canonical") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7) * Rational(-2) == Rational(-14));
    CHECK(Rational(0) / Rational(5, 3) == Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));

    Rational r(-4, 6);
    CHECK(r.numerator() == -2);
    CHECK(r.denominator() == 3);
}

TEST_CASE("division by zero") {
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), DivisionByZero);
    CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), DivisionByZero);
}

TEST_CASE("zero is represented uniquely as 0/1") {
    Rational z = Rational(0, 7);
    CHECK(z.numerator() == 0);
    CHECK(z.denominator() == 1);
    CHECK(z.is_zero());
    CHECK((Rational(1, 3) - Rational(2, 6)).denominator() == 1);
}

TEST_CASE("parse accepts p, -p and p/q") {
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));

    Rational out;
    CHECK_FALSE(Rational::try_parse("", out));
    CHECK_FALSE(Rational::try_parse("1.5", out));
    CHECK_FALSE(Rational::try_parse("1/", out));
    CHECK_FALSE(Rational::try_parse("/3", out));
    CHECK_FALSE(Rational::try_parse("a", out));
    CHECK_FALSE(Rational::try_parse("1/0", out));
    CHECK_FALSE(Rational::try_parse("+5", out));
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
}

TEST_CASE("formatting is canonical: p/q with sign on the numerator") {
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(0).str() == "0");
    CHECK(Rational(mpz_class("123456789012345678901234567891"), mpz_class(7)).str() ==
          "123456789012345678901234567891/7");
}

TEST_CASE("parse round trip over random rationals") {
    SeededRng rng(2024);
    for (int i = 0; i < 500; ++i) {
        Rational r(rng.bounded(-1000000, 1000000), rng.bounded(1, 1000000));
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("field laws hold exactly under canonical form") {
    SeededRng rng(7);
    for (int i = 0; i < 300; ++i) {
        Rational a(rng.bounded(-50, 50), rng.bounded(1, 30));
        Rational b(rng.bounded(-50, 50), rng.bounded(1, 30));
        Rational c(rng.bounded(-50, 50), rng.bounded(1, 30));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
    }
}

TEST_CASE("arbitrary precision: no overflow on repeated products") {
    Rational big(1);
    for (int i = 0; i < 64; ++i) big *= Rational(3, 2);
    // 3^64 / 2^64 does not fit machine words
    CHECK(big.numerator() == mpz_class("3433683820292512484657849089281"));
    CHECK(big.denominator() == mpz_class("18446744073709551616"));
}

TEST_CASE("exact zero decision ignores context and equals numerator == 0") {
    ZeroPolicy exact = ZeroPolicy::exact();
    CHECK(is_zero(Rational(0), 123.0, exact));
    Rational tiny(1, 1);
    for (int i = 0; i < 4; ++i) tiny *= Rational(1, 10000000000L);  // 1/10^40
    CHECK_FALSE(is_zero(tiny, 0.0, exact));
    CHECK_FALSE(tiny.is_zero());
}

TEST_CASE("thresholded zero decision scales with the segment") {
    ZeroPolicy pol = ZeroPolicy::thresholded(0.0, 1e-10);
    CHECK(is_zero(1e-14, 1.0, pol));
    CHECK_FALSE(is_zero(1e-14, 1e-14, pol));
    CHECK_FALSE(is_zero(0.5, 1.0, pol));

    std::vector<double> segment{1e-14, 1.0, -0.5};
    CHECK(segment_scale(std::span<const double>(segment)) == 1.0);
    CHECK(is_zero(1e-14, std::span<const double>(segment), pol));
}

TEST_CASE("default thresholded tolerances") {
    ZeroPolicy pol = ZeroPolicy::thresholded();
    CHECK(pol.tol_abs == 0.0);
    CHECK(pol.tol_rel == 1e-10);
    CHECK(pol.mode == ZeroMode::Thresholded);
}
