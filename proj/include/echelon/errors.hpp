#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace echelon {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- arithmetic ---

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

// --- structural / indexing ---

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

class NonIncreasingIndices : public Error {
public:
    NonIncreasingIndices() : Error("index list must be strictly increasing") {}
};

// --- elimination ---

class ZeroScaleDivisor : public Error {
public:
    ZeroScaleDivisor() : Error("row scale divisor is zero") {}
};

class NoColumnsRemaining : public Error {
public:
    NoColumnsRemaining() : Error("all columns already consumed") {}
};

class SingularTriangular : public Error {
public:
    explicit SingularTriangular(std::size_t row)
        : Error("triangular system has zero diagonal at row " + std::to_string(row + 1)) {}
};

// --- block elimination / intersection ---

class SingularBlock : public Error {
public:
    SingularBlock() : Error("leading block is not invertible") {}
};

class RankMismatch : public Error {
public:
    RankMismatch() : Error("trailing rows do not vanish: matrix rank exceeds block size") {}
};

class DependentRowsGiven : public Error {
public:
    DependentRowsGiven() : Error("the given rows are linearly dependent") {}
};

class DependentColumnsGiven : public Error {
public:
    DependentColumnsGiven() : Error("the given columns are linearly dependent") {}
};

class WrongCardinality : public Error {
public:
    explicit WrongCardinality(const std::string& msg) : Error("wrong cardinality: " + msg) {}
};

// --- oracle ---

class NotSquare : public Error {
public:
    NotSquare() : Error("matrix is not square") {}
};

class TooLarge : public Error {
public:
    explicit TooLarge(const std::string& msg) : Error("input too large: " + msg) {}
};

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& msg) : Error("invalid spec: " + msg) {}
};

// --- io ---

/// Parse failure with 1-based line and column (cell) position; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : Error(locate(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string locate(const std::string& msg, std::size_t line, std::size_t column) {
        std::string s = "parse error";
        if (line > 0) {
            s += " at line " + std::to_string(line);
            if (column > 0) s += ", column " + std::to_string(column);
        }
        return s + ": " + msg;
    }

    std::size_t line_;
    std::size_t column_;
};

class RaggedRows : public Error {
public:
    RaggedRows(std::size_t line, std::size_t expected, std::size_t got)
        : Error("ragged rows at line " + std::to_string(line) + ": expected " + std::to_string(expected) +
                " cells, got " + std::to_string(got)),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& msg) : Error("unsupported format: " + msg) {}
};

}  // namespace echelon
