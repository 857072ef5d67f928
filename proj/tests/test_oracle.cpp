#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <echelon/oracle.hpp>

using namespace echelon;

TEST_CASE("cofactor determinants") {
    CHECK(det_cofactor(Matrix<Rational>{{1, 2}, {3, 7}}) == Rational(1));
    CHECK(det_cofactor(Matrix<Rational>::identity(3)) == Rational(1));
    CHECK(det_cofactor(Matrix<Rational>{{1, 2}, {2, 4}}) == Rational(0));
    CHECK(det_cofactor(Matrix<Rational>{{37, 57}, {48, 74}}) == Rational(2));
    CHECK(det_cofactor(Matrix<Rational>()) == Rational(1));
    CHECK(det_cofactor(Matrix<Rational>{{-3}}) == Rational(-3));
    CHECK_THROWS_AS(det_cofactor(Matrix<Rational>(2, 3)), NotSquare);
    CHECK_THROWS_AS(det_cofactor(Matrix<Rational>::identity(9)), TooLarge);
}

TEST_CASE("determinant is alternating and multiplicative on small random inputs") {
    SeededRng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.bounded(1, 4));
        Matrix<Rational> a = random_integer_matrix(n, n, 6, rng);
        Matrix<Rational> b = random_integer_matrix(n, n, 6, rng);
        CHECK(det_cofactor(matmul(a, b)) == det_cofactor(a) * det_cofactor(b));
        if (n >= 2) {
            Matrix<Rational> swapped = a;
            swapped.swap_rows(0, 1);
            CHECK(det_cofactor(swapped) == -det_cofactor(a));
        }
    }
}

TEST_CASE("brute-force rank") {
    Matrix<Rational> example{{1, 2, 11, 17}, {3, 7, 37, 57}, {4, 9, 48, 74}};
    CHECK(rank_bruteforce(example) == 2);
    CHECK(rank_bruteforce(Matrix<Rational>::zero(3, 4)) == 0);
    CHECK(rank_bruteforce(Matrix<Rational>{{1, 2, 3, 4}, {1, 2, 4, 5}}) == 2);
    CHECK(rank_bruteforce(Matrix<Rational>::identity(4)) == 4);
    CHECK(rank_bruteforce(Matrix<Rational>(0, 4)) == 0);
    CHECK_THROWS_AS(rank_bruteforce(Matrix<Rational>(7, 7)), TooLarge);
}

TEST_CASE("random generator hits its target rank") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        RandomMatrixSpec spec{3, 4, 2, 5, seed};
        Matrix<Rational> m = random_rank_r(spec);
        CHECK(m.rows() == 3);
        CHECK(m.cols() == 4);
        CHECK(rank_bruteforce(m) == 2);
    }
}

TEST_CASE("generator determinism and edge ranks") {
    RandomMatrixSpec spec{4, 5, 3, 7, 42};
    CHECK(random_rank_r(spec) == random_rank_r(spec));

    RandomMatrixSpec zero_spec{3, 3, 0, 5, 1};
    CHECK(random_rank_r(zero_spec) == Matrix<Rational>::zero(3, 3));

    RandomMatrixSpec full_spec{4, 4, 4, 3, 9};
    CHECK(rank_bruteforce(random_rank_r(full_spec)) == 4);

    CHECK_THROWS_AS(random_rank_r(RandomMatrixSpec{2, 3, 3, 5, 1}), InvalidSpec);
    CHECK_THROWS_AS(random_rank_r(RandomMatrixSpec{2, 2, 1, 0, 1}), InvalidSpec);
}

TEST_CASE("generator handles factors beyond the brute-force guard") {
    RandomMatrixSpec spec{10, 12, 7, 4, 5};
    Matrix<Rational> m = random_rank_r(spec);
    CHECK(m.rows() == 10);
    CHECK(m.cols() == 12);
    CHECK(rref(m).rank == 7);
}
