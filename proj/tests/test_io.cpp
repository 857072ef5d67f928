#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <echelon/io.hpp>
#include <echelon/oracle.hpp>

#include <sstream>

using namespace echelon;

namespace {
const Matrix<Rational> kExample{{1, 2, 11, 17}, {3, 7, 37, 57}, {4, 9, 48, 74}};
}

TEST_CASE("csv of integers reads exactly") {
    MatrixDocument doc = read_matrix(std::string_view("1,2,11,17\n3,7,37,57\n4,9,48,74\n"));
    CHECK(doc.is_exact());
    CHECK(doc.source_format == MatrixFormat::RationalCsv);
    CHECK(doc.exact() == kExample);
}

TEST_CASE("csv edge shapes") {
    MatrixDocument one = read_matrix(std::string_view("1/2"));
    CHECK(one.exact() == Matrix<Rational>{{Rational(1, 2)}});

    MatrixDocument empty = read_matrix(std::string_view(""));
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 0);

    MatrixDocument spaced = read_matrix(std::string_view(" 1 , -2/3 \n 4 , 5 \n"));
    CHECK(spaced.exact() == Matrix<Rational>{{1, Rational(-2, 3)}, {4, 5}});
}

TEST_CASE("csv error reporting") {
    CHECK_THROWS_AS(read_matrix(std::string_view("1,2\n3\n")), RaggedRows);
    try {
        read_matrix(std::string_view("1,2\n3\n"));
    } catch (const RaggedRows& e) {
        CHECK(e.line() == 2);
    }
    try {
        read_matrix(std::string_view("1,x\n"));
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(read_matrix(std::string_view("1,\n")), ParseError);
}

TEST_CASE("decimal or scientific literals switch the document to float") {
    MatrixDocument doc = read_matrix(std::string_view("1.5,2\n-3e2,1/2\n"));
    CHECK_FALSE(doc.is_exact());
    CHECK(doc.floating() == Matrix<double>{{1.5, 2.0}, {-300.0, 0.5}});
}

TEST_CASE("matrix market array round trip") {
    std::string text = write_matrix(kExample, MatrixFormat::MatrixMarketArray);
    CHECK(text.starts_with("%%MatrixMarket matrix array integer general\n"));
    MatrixDocument doc = read_matrix(std::string_view(text));
    CHECK(doc.is_exact());
    CHECK(doc.source_format == MatrixFormat::MatrixMarketArray);
    CHECK(doc.exact() == kExample);
}

TEST_CASE("matrix market array is column major") {
    MatrixDocument doc = read_matrix(std::string_view("%%MatrixMarket matrix array integer general\n"
                                                      "2 3\n1\n4\n2\n5\n3\n6\n"));
    CHECK(doc.exact() == Matrix<Rational>{{1, 2, 3}, {4, 5, 6}});
}

TEST_CASE("matrix market coordinate densifies") {
    MatrixDocument doc = read_matrix(std::string_view("%%MatrixMarket matrix coordinate integer general\n"
                                                      "% a comment line\n"
                                                      "3 4 3\n1 1 5\n2 3 -7\n3 4 1\n"));
    Matrix<Rational> expected(3, 4);
    expected(0, 0) = 5;
    expected(1, 2) = -7;
    expected(2, 3) = 1;
    CHECK(doc.exact() == expected);
    CHECK(doc.source_format == MatrixFormat::MatrixMarketCoordinate);
}

TEST_CASE("matrix market real entries force float mode unless integral") {
    MatrixDocument floating = read_matrix(std::string_view("%%MatrixMarket matrix array real general\n"
                                                           "2 1\n1.25\n-3.5\n"));
    CHECK_FALSE(floating.is_exact());
    CHECK(floating.floating() == Matrix<double>{{1.25}, {-3.5}});

    MatrixDocument integral = read_matrix(std::string_view("%%MatrixMarket matrix array real general\n"
                                                           "2 1\n3\n-7\n"));
    CHECK(integral.is_exact());
    CHECK(integral.exact() == Matrix<Rational>{{3}, {-7}});
}

TEST_CASE("unsupported matrix market variants") {
    CHECK_THROWS_AS(read_matrix(std::string_view("%%MatrixMarket matrix array complex general\n1 1\n0 0\n")),
                    UnsupportedFormat);
    CHECK_THROWS_AS(read_matrix(std::string_view("%%MatrixMarket matrix array real symmetric\n1 1\n0\n")),
                    UnsupportedFormat);
    CHECK_THROWS_AS(read_matrix(std::string_view("%%MatrixMarket matrix coordinate pattern general\n1 1 0\n")),
                    UnsupportedFormat);
    CHECK_THROWS_AS(read_matrix(std::string_view("%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 5\n")),
                    ParseError);
}

TEST_CASE("exact round trips across formats") {
    // zero-dimension shapes are not representable in these grammars beyond
    // the empty file, so the round trip quantifies over nonempty matrices
    SeededRng rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = static_cast<std::size_t>(rng.bounded(1, 5));
        std::size_t n = static_cast<std::size_t>(rng.bounded(1, 5));
        Matrix<Rational> a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(rng.bounded(-99, 99), rng.bounded(1, 40));

        CHECK(read_matrix(std::string_view(write_matrix(a, MatrixFormat::RationalCsv))).exact() == a);

        // Matrix Market has no rational field; integral matrices round-trip
        // exactly, the rest go through CSV
        Matrix<Rational> ints(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) ints(i, j) = Rational(rng.bounded(-99, 99));
        CHECK(read_matrix(std::string_view(write_matrix(ints, MatrixFormat::MatrixMarketArray))).exact() == ints);
        CHECK(read_matrix(std::string_view(write_matrix(ints, MatrixFormat::MatrixMarketCoordinate))).exact() == ints);
    }

    Matrix<Rational> empty;
    CHECK(read_matrix(std::string_view(write_matrix(empty, MatrixFormat::RationalCsv))).exact() == empty);
}

TEST_CASE("float round trips keep every bit and stay float") {
    SeededRng rng(89);
    Matrix<double> a(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            a(i, j) = double(rng.bounded(-1000, 1000)) / double(rng.bounded(1, 999));
    a(0, 0) = 3.0;  // integral value must not flip the document to exact

    for (MatrixFormat fmt :
         {MatrixFormat::RationalCsv, MatrixFormat::MatrixMarketArray, MatrixFormat::MatrixMarketCoordinate}) {
        MatrixDocument doc = read_matrix(std::string_view(write_matrix(a, fmt)));
        CHECK_FALSE(doc.is_exact());
        CHECK(doc.floating() == a);
    }
}

TEST_CASE("format auto-detection by banner") {
    CHECK(read_matrix(std::string_view("%%MatrixMarket matrix array integer general\n1 1\n7\n")).source_format ==
          MatrixFormat::MatrixMarketArray);
    CHECK(read_matrix(std::string_view("7\n")).source_format == MatrixFormat::RationalCsv);
    CHECK_THROWS_AS(read_matrix(std::string_view("1,2\n"), MatrixFormat::MatrixMarketArray), UnsupportedFormat);
}

TEST_CASE("structured echelon result round trip") {
    EchelonForm<Rational> ef = rref(kExample, ZeroPolicy::exact(), std::nullopt, true);
    json j = result_to_json(ef);
    CHECK(j["rank"] == 2);
    CHECK(j["pivot_cols"] == json::array({1, 2}));
    CHECK(j["kind"] == "rref");

    EchelonForm<Rational> back = echelon_result_from_json<Rational>(json::parse(write_result_structured(ef)));
    CHECK(back.rank == ef.rank);
    CHECK(back.pivot_cols == ef.pivot_cols);
    CHECK(back.Z == ef.Z);
    CHECK(back.F == ef.F);
    CHECK(back.P == ef.P);
    CHECK(back.op_count == ef.op_count);
    CHECK(back.pivot_product == ef.pivot_product);
    REQUIRE(back.E.has_value());
    CHECK(*back.E == *ef.E);
}

TEST_CASE("structured cr and nullspace round trips") {
    CRFactorization<Rational> cr = cr_factor(Matrix<Rational>{{1, 2, 3, 4}, {1, 2, 4, 5}});
    json j = result_to_json(cr);
    CHECK(j["pivot_cols"] == json::array({1, 3}));
    CRFactorization<Rational> cr_back = cr_result_from_json<Rational>(json::parse(structured_bytes(j)));
    CHECK(cr_back.C == cr.C);
    CHECK(cr_back.R == cr.R);
    CHECK(cr_back.F == cr.F);
    CHECK(cr_back.P == cr.P);
    CHECK(cr_back.pivot_cols == cr.pivot_cols);

    NullspaceBasis<Rational> ns = nullspace(Matrix<Rational>::identity(3));
    json nj = result_to_json(ns);
    CHECK(nj["X"]["cols"] == 0);
    CHECK(nj["X"]["rows"] == 3);
    NullspaceBasis<Rational> ns_back = nullspace_result_from_json<Rational>(nj);
    CHECK(ns_back.X == ns.X);
    CHECK(ns_back.free_cols == ns.free_cols);
}

TEST_CASE("structured solve round trip, both statuses") {
    SolveResult<Rational> sr = solve(kExample, Matrix<Rational>{{17}, {57}, {74}});
    SolveResult<Rational> sr_back = solve_result_from_json<Rational>(json::parse(write_result_structured(sr)));
    CHECK(sr_back.status == sr.status);
    CHECK(*sr_back.particular == *sr.particular);
    CHECK(sr_back.nullspace.X == sr.nullspace.X);

    SolveResult<Rational> bad = solve(kExample, Matrix<Rational>{{0}, {0}, {1}});
    json j = result_to_json(bad);
    CHECK(j["status"] == "inconsistent");
    CHECK(j["particular"].is_null());
    SolveResult<Rational> bad_back = solve_result_from_json<Rational>(j);
    CHECK(bad_back.status == SolveStatus::Inconsistent);
    CHECK_FALSE(bad_back.particular.has_value());
}

TEST_CASE("float results serialize with 17 significant digits") {
    Matrix<double> a{{1.0, 3.0}, {2.0, 1.0 / 3.0}};
    EchelonForm<double> ef = rref(a, ZeroPolicy::thresholded());
    json j = result_to_json(ef);
    CHECK(j["mode"] == "float");
    EchelonForm<double> back = echelon_result_from_json<double>(j);
    CHECK(back.Z == ef.Z);  // bit-for-bit through the text form
    CHECK_THROWS_AS(echelon_result_from_json<Rational>(j), ParseError);
}

TEST_CASE("text output aligns columns") {
    EchelonForm<Rational> ef = rref(kExample);
    std::string text = write_result_text(ef);
    CHECK(text.find("rank: 2\n") != std::string::npos);
    CHECK(text.find("pivot_cols: 1 2\n") != std::string::npos);
    CHECK(text.find("1 0 3 5\n") != std::string::npos);
    CHECK(text.find("0 1 4 6\n") != std::string::npos);
    CHECK(text.find("0 0 0 0\n") != std::string::npos);

    std::string ns_text = write_result_text(nullspace(kExample));
    CHECK(ns_text.find("-3 -5\n") != std::string::npos);
    CHECK(ns_text.find(" 1  0\n") != std::string::npos);
}

TEST_CASE("reading from a stream") {
    std::istringstream in("1,2\n3,4\n");
    MatrixDocument doc = read_matrix(in);
    CHECK(doc.exact() == Matrix<Rational>{{1, 2}, {3, 4}});
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/echelon-test.csv"), ParseError);
}
