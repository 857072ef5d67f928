#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "echelon/block.hpp"
#include "echelon/factor.hpp"
#include "echelon/rref.hpp"

namespace echelon {

using json = nlohmann::ordered_json;

enum class MatrixFormat { RationalCsv, MatrixMarketArray, MatrixMarketCoordinate };
enum class ScalarMode { Exact, Float };

/**
 * A matrix together with how it arrived: exact (rational entries) or float,
 * CSV or Matrix Market. Exact documents round-trip bit-exactly through
 * write_matrix/read_matrix; float documents round-trip through the 17
 * significant digits written.
 */
struct MatrixDocument {
    std::variant<Matrix<Rational>, Matrix<double>> matrix;
    MatrixFormat source_format = MatrixFormat::RationalCsv;

    ScalarMode mode() const { return matrix.index() == 0 ? ScalarMode::Exact : ScalarMode::Float; }
    bool is_exact() const { return mode() == ScalarMode::Exact; }
    const Matrix<Rational>& exact() const { return std::get<Matrix<Rational>>(matrix); }
    const Matrix<double>& floating() const { return std::get<Matrix<double>>(matrix); }

    std::size_t rows() const {
        return is_exact() ? exact().rows() : floating().rows();
    }
    std::size_t cols() const {
        return is_exact() ? exact().cols() : floating().cols();
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

inline bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

/// True when the token has no fractional or exponent syntax, i.e. it is a
/// plain (possibly signed) decimal integer.
inline bool lexically_integer(std::string_view s) {
    std::string_view t = s;
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
        if (c < '0' || c > '9') return false;
    return true;
}

/// One parsed cell: every rational is also representable as a double, but not
/// the other way around.
struct Cell {
    std::optional<Rational> exact;
    double value = 0.0;
};

inline Cell parse_cell(std::string_view text, std::size_t line, std::size_t column) {
    Cell cell;
    Rational r;
    if (Rational::try_parse(text, r)) {
        cell.value = r.to_double();
        cell.exact = std::move(r);
        return cell;
    }
    if (parse_double(text, cell.value)) return cell;
    throw ParseError("cannot read entry \"" + std::string(text) + "\"", line, column);
}

inline MatrixDocument document_from_cells(const std::vector<std::vector<Cell>>& cells, std::size_t rows,
                                          std::size_t cols, MatrixFormat fmt) {
    bool all_exact = true;
    for (const auto& row : cells)
        for (const Cell& c : row)
            if (!c.exact) all_exact = false;

    MatrixDocument doc;
    doc.source_format = fmt;
    if (all_exact) {
        Matrix<Rational> m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = *cells[i][j].exact;
        doc.matrix = std::move(m);
    } else {
        Matrix<double> m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = cells[i][j].value;
        doc.matrix = std::move(m);
    }
    return doc;
}

inline MatrixDocument read_csv(std::string_view text) {
    std::vector<std::vector<Cell>> cells;
    std::size_t cols = 0;

    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();

    for (std::size_t li = 0; li < lines.size(); ++li) {
        std::vector<std::string_view> raw = split(lines[li], ',');
        std::vector<Cell> row;
        row.reserve(raw.size());
        for (std::size_t ci = 0; ci < raw.size(); ++ci) row.push_back(parse_cell(trim(raw[ci]), li + 1, ci + 1));
        if (li == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw RaggedRows(li + 1, cols, row.size());
        cells.push_back(std::move(row));
    }
    return document_from_cells(cells, cells.size(), cells.empty() ? 0 : cols, MatrixFormat::RationalCsv);
}

struct MmHeader {
    bool coordinate = false;
    bool integer_field = false;
};

inline MmHeader parse_mm_header(std::string_view line) {
    std::string lowered(line);
    for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::istringstream hs(lowered);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (object != "matrix") throw UnsupportedFormat("Matrix Market object \"" + object + "\"");
    if (format != "array" && format != "coordinate") throw UnsupportedFormat("Matrix Market format \"" + format + "\"");
    if (field != "real" && field != "integer") throw UnsupportedFormat("Matrix Market field \"" + field + "\"");
    if (symmetry != "general") throw UnsupportedFormat("Matrix Market symmetry \"" + symmetry + "\"");
    return {format == "coordinate", field == "integer"};
}

inline MatrixDocument read_matrix_market(std::string_view text) {
    std::vector<std::string_view> lines = split(text, '\n');
    MmHeader header = parse_mm_header(trim(lines[0]));

    std::size_t li = 1;
    auto next_data_line = [&]() -> std::optional<std::pair<std::string_view, std::size_t>> {
        while (li < lines.size()) {
            std::string_view l = trim(lines[li]);
            ++li;
            if (l.empty() || l.front() == '%') continue;
            return std::make_pair(l, li);
        }
        return std::nullopt;
    };

    auto size_line = next_data_line();
    if (!size_line) throw ParseError("missing size line", lines.size(), 0);

    auto parse_count = [&](std::string_view tok, std::size_t line) -> std::size_t {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("bad integer \"" + std::string(tok) + "\"", line, 0);
        return v;
    };

    std::vector<std::string_view> dims;
    for (std::string_view t : split(size_line->first, ' '))
        if (!trim(t).empty()) dims.push_back(trim(t));

    if (!header.coordinate) {
        if (dims.size() != 2) throw ParseError("array size line needs 2 numbers", size_line->second, 0);
        std::size_t rows = parse_count(dims[0], size_line->second);
        std::size_t cols = parse_count(dims[1], size_line->second);

        std::vector<std::vector<Cell>> cells(rows, std::vector<Cell>(cols));
        // array entries run down each column
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) {
                auto entry = next_data_line();
                if (!entry) throw ParseError("expected " + std::to_string(rows * cols) + " entries", lines.size(), 0);
                Cell c = parse_cell(entry->first, entry->second, 1);
                if (header.integer_field && !c.exact)
                    throw ParseError("integer field holds non-integer", entry->second, 1);
                if (!header.integer_field && c.exact && !lexically_integer(entry->first)) c.exact.reset();
                cells[i][j] = std::move(c);
            }
        return document_from_cells(cells, rows, cols, MatrixFormat::MatrixMarketArray);
    }

    if (dims.size() != 3) throw ParseError("coordinate size line needs 3 numbers", size_line->second, 0);
    std::size_t rows = parse_count(dims[0], size_line->second);
    std::size_t cols = parse_count(dims[1], size_line->second);
    std::size_t nnz = parse_count(dims[2], size_line->second);

    std::vector<std::vector<Cell>> cells(rows, std::vector<Cell>(cols));
    for (auto& row : cells)
        for (Cell& c : row) c.exact = Rational(0);

    for (std::size_t k = 0; k < nnz; ++k) {
        auto entry = next_data_line();
        if (!entry) throw ParseError("expected " + std::to_string(nnz) + " coordinate entries", lines.size(), 0);
        std::vector<std::string_view> toks;
        for (std::string_view t : split(entry->first, ' '))
            if (!trim(t).empty()) toks.push_back(trim(t));
        if (toks.size() != 3) throw ParseError("coordinate entry needs \"row col value\"", entry->second, 0);
        std::size_t i = parse_count(toks[0], entry->second);
        std::size_t j = parse_count(toks[1], entry->second);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("coordinate (" + std::string(toks[0]) + ", " + std::string(toks[1]) + ") out of range",
                             entry->second, 0);
        Cell c = parse_cell(toks[2], entry->second, 3);
        if (header.integer_field && !c.exact) throw ParseError("integer field holds non-integer", entry->second, 3);
        if (!header.integer_field && c.exact && !lexically_integer(toks[2])) c.exact.reset();
        cells[i - 1][j - 1] = std::move(c);
    }
    return document_from_cells(cells, rows, cols, MatrixFormat::MatrixMarketCoordinate);
}

/// Float entries are written so they read back as float: plain-integer values
/// get an explicit ".0".
inline std::string float_token(double v) {
    std::string s = scalar_traits<double>::to_string(v);
    if (lexically_integer(s)) s += ".0";
    return s;
}

}  // namespace detail

/// Reads CSV-of-rationals or Matrix Market ("%%MatrixMarket" sniffs the
/// latter). Entries that are all rational produce an exact document; any
/// decimal or scientific literal switches the document to float.
inline MatrixDocument read_matrix(std::string_view text, std::optional<MatrixFormat> format = std::nullopt) {
    bool market = text.starts_with("%%MatrixMarket");
    if (format) market = *format != MatrixFormat::RationalCsv;
    if (market && !text.starts_with("%%MatrixMarket")) throw UnsupportedFormat("missing %%MatrixMarket banner");
    return market ? detail::read_matrix_market(text) : detail::read_csv(text);
}

inline MatrixDocument read_matrix(std::istream& in, std::optional<MatrixFormat> format = std::nullopt) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_matrix(std::string_view(buf.str()), format);
}

inline MatrixDocument read_matrix_file(const std::string& path, std::optional<MatrixFormat> format = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    return read_matrix(in, format);
}

inline std::string write_matrix(const Matrix<Rational>& m, MatrixFormat format) {
    std::ostringstream out;
    bool integral = true;
    for (std::size_t i = 0; i < m.rows() && integral; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_integer()) {
                integral = false;
                break;
            }

    switch (format) {
        case MatrixFormat::RationalCsv:
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j).str();
                out << "\n";
            }
            break;
        case MatrixFormat::MatrixMarketArray:
            // non-integral rationals have no Matrix Market field; written as
            // real they lose exactness
            out << "%%MatrixMarket matrix array " << (integral ? "integer" : "real") << " general\n";
            out << m.rows() << " " << m.cols() << "\n";
            for (std::size_t j = 0; j < m.cols(); ++j)
                for (std::size_t i = 0; i < m.rows(); ++i)
                    out << (integral ? m(i, j).str() : detail::float_token(m(i, j).to_double())) << "\n";
            break;
        case MatrixFormat::MatrixMarketCoordinate: {
            std::size_t nnz = 0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (!m(i, j).is_zero()) ++nnz;
            out << "%%MatrixMarket matrix coordinate " << (integral ? "integer" : "real") << " general\n";
            out << m.rows() << " " << m.cols() << " " << nnz << "\n";
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (!m(i, j).is_zero())
                        out << i + 1 << " " << j + 1 << " "
                            << (integral ? m(i, j).str() : detail::float_token(m(i, j).to_double())) << "\n";
            break;
        }
    }
    return out.str();
}

inline std::string write_matrix(const Matrix<double>& m, MatrixFormat format) {
    std::ostringstream out;
    switch (format) {
        case MatrixFormat::RationalCsv:
            for (std::size_t i = 0; i < m.rows(); ++i) {
                for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << detail::float_token(m(i, j));
                out << "\n";
            }
            break;
        case MatrixFormat::MatrixMarketArray:
            out << "%%MatrixMarket matrix array real general\n";
            out << m.rows() << " " << m.cols() << "\n";
            for (std::size_t j = 0; j < m.cols(); ++j)
                for (std::size_t i = 0; i < m.rows(); ++i) out << detail::float_token(m(i, j)) << "\n";
            break;
        case MatrixFormat::MatrixMarketCoordinate: {
            std::size_t nnz = 0;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (m(i, j) != 0.0) ++nnz;
            out << "%%MatrixMarket matrix coordinate real general\n";
            out << m.rows() << " " << m.cols() << " " << nnz << "\n";
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    if (m(i, j) != 0.0) out << i + 1 << " " << j + 1 << " " << detail::float_token(m(i, j)) << "\n";
            break;
        }
    }
    return out.str();
}

inline std::string write_matrix(const MatrixDocument& doc) {
    return doc.is_exact() ? write_matrix(doc.exact(), doc.source_format)
                          : write_matrix(doc.floating(), doc.source_format);
}

// --- structured (JSON) result format ---

template <Scalar T>
json matrix_to_json(const Matrix<T>& m) {
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_traits<T>::to_string(m(i, j)));
        entries.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

namespace detail {

template <Scalar T>
T scalar_from_string(const std::string& s);

template <>
inline Rational scalar_from_string<Rational>(const std::string& s) {
    return Rational::parse(s);
}

template <>
inline double scalar_from_string<double>(const std::string& s) {
    double v = 0.0;
    if (!parse_double(s, v)) throw ParseError("bad float \"" + s + "\"");
    return v;
}

inline json one_based(const std::vector<std::size_t>& idx) {
    json out = json::array();
    for (std::size_t v : idx) out.push_back(v + 1);
    return out;
}

inline std::vector<std::size_t> zero_based(const json& j) {
    std::vector<std::size_t> out;
    for (const auto& v : j) {
        std::size_t u = v.get<std::size_t>();
        if (u == 0) throw ParseError("index lists are 1-based");
        out.push_back(u - 1);
    }
    return out;
}

template <Scalar T>
const char* mode_name() {
    return scalar_traits<T>::is_exact ? "exact" : "float";
}

template <Scalar T>
void check_mode(const json& j) {
    if (j.at("mode").get<std::string>() != mode_name<T>())
        throw ParseError("document mode is " + j.at("mode").get<std::string>());
}

}  // namespace detail

template <Scalar T>
Matrix<T> matrix_from_json(const json& j) {
    Matrix<T> m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const json& entries = j.at("entries");
    if (entries.size() != m.rows()) throw ParseError("entry rows do not match \"rows\"");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (entries[i].size() != m.cols()) throw ParseError("entry row " + std::to_string(i + 1) + " has wrong length");
        for (std::size_t jj = 0; jj < m.cols(); ++jj)
            m(i, jj) = detail::scalar_from_string<T>(entries[i][jj].get<std::string>());
    }
    return m;
}

inline json op_count_to_json(const OpCount& ops) {
    return json{{"mults", ops.mults}, {"divs", ops.divs}, {"add_subs", ops.add_subs}, {"row_swaps", ops.row_swaps}};
}

inline OpCount op_count_from_json(const json& j) {
    OpCount ops;
    ops.mults = j.at("mults").get<std::uint64_t>();
    ops.divs = j.at("divs").get<std::uint64_t>();
    ops.add_subs = j.at("add_subs").get<std::uint64_t>();
    ops.row_swaps = j.at("row_swaps").get<std::uint64_t>();
    return ops;
}

template <Scalar T>
json result_to_json(const EchelonForm<T>& ef) {
    json j{{"format", "echelon.result/1"},
           {"kind", "rref"},
           {"mode", detail::mode_name<T>()},
           {"rank", ef.rank},
           {"pivot_cols", detail::one_based(ef.pivot_cols)},
           {"Z", matrix_to_json(ef.Z)},
           {"F", matrix_to_json(ef.F)},
           {"P", detail::one_based(ef.P.positions())},
           {"pivot_product", scalar_traits<T>::to_string(ef.pivot_product)},
           {"op_count", op_count_to_json(ef.op_count)}};
    if (ef.E) j["E"] = matrix_to_json(*ef.E);
    return j;
}

template <Scalar T>
json result_to_json(const CRFactorization<T>& cr) {
    return json{{"format", "echelon.result/1"},
                {"kind", "cr"},
                {"mode", detail::mode_name<T>()},
                {"rank", cr.rank()},
                {"pivot_cols", detail::one_based(cr.pivot_cols)},
                {"C", matrix_to_json(cr.C)},
                {"R", matrix_to_json(cr.R)},
                {"F", matrix_to_json(cr.F)},
                {"P", detail::one_based(cr.P.positions())}};
}

template <Scalar T>
json result_to_json(const NullspaceBasis<T>& ns) {
    return json{{"format", "echelon.result/1"},
                {"kind", "nullspace"},
                {"mode", detail::mode_name<T>()},
                {"free_cols", detail::one_based(ns.free_cols)},
                {"X", matrix_to_json(ns.X)}};
}

inline const char* solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Unique: return "unique";
        case SolveStatus::Infinite: return "infinite";
        default: return "inconsistent";
    }
}

template <Scalar T>
json result_to_json(const SolveResult<T>& sr) {
    json j{{"format", "echelon.result/1"},
           {"kind", "solve"},
           {"mode", detail::mode_name<T>()},
           {"status", solve_status_name(sr.status)}};
    j["particular"] = sr.particular ? matrix_to_json(*sr.particular) : json(nullptr);
    j["nullspace"] = json{{"free_cols", detail::one_based(sr.nullspace.free_cols)}, {"X", matrix_to_json(sr.nullspace.X)}};
    return j;
}

template <Scalar T>
EchelonForm<T> echelon_result_from_json(const json& j) {
    detail::check_mode<T>(j);
    EchelonForm<T> ef;
    ef.rank = j.at("rank").get<std::size_t>();
    ef.pivot_cols = detail::zero_based(j.at("pivot_cols"));
    ef.Z = matrix_from_json<T>(j.at("Z"));
    ef.F = matrix_from_json<T>(j.at("F"));
    ef.P = Permutation(detail::zero_based(j.at("P")));
    ef.pivot_product = detail::scalar_from_string<T>(j.at("pivot_product").get<std::string>());
    ef.op_count = op_count_from_json(j.at("op_count"));
    if (j.contains("E")) ef.E = matrix_from_json<T>(j.at("E"));
    return ef;
}

template <Scalar T>
CRFactorization<T> cr_result_from_json(const json& j) {
    detail::check_mode<T>(j);
    CRFactorization<T> cr;
    cr.pivot_cols = detail::zero_based(j.at("pivot_cols"));
    cr.C = matrix_from_json<T>(j.at("C"));
    cr.R = matrix_from_json<T>(j.at("R"));
    cr.F = matrix_from_json<T>(j.at("F"));
    cr.P = Permutation(detail::zero_based(j.at("P")));
    return cr;
}

template <Scalar T>
NullspaceBasis<T> nullspace_result_from_json(const json& j) {
    detail::check_mode<T>(j);
    NullspaceBasis<T> ns;
    ns.free_cols = detail::zero_based(j.at("free_cols"));
    ns.X = matrix_from_json<T>(j.at("X"));
    return ns;
}

template <Scalar T>
SolveResult<T> solve_result_from_json(const json& j) {
    detail::check_mode<T>(j);
    SolveResult<T> sr;
    std::string status = j.at("status").get<std::string>();
    sr.status = status == "unique"       ? SolveStatus::Unique
                : status == "infinite"   ? SolveStatus::Infinite
                                         : SolveStatus::Inconsistent;
    if (!j.at("particular").is_null()) sr.particular = matrix_from_json<T>(j.at("particular"));
    sr.nullspace.free_cols = detail::zero_based(j.at("nullspace").at("free_cols"));
    sr.nullspace.X = matrix_from_json<T>(j.at("nullspace").at("X"));
    return sr;
}

inline std::string structured_bytes(const json& j) { return j.dump(2) + "\n"; }

// --- plain text result format ---

namespace detail {

template <Scalar T>
void append_matrix_block(std::ostream& out, const std::string& name, const Matrix<T>& m) {
    out << name << " (" << m.rows() << " x " << m.cols() << "):\n";
    std::vector<std::size_t> width(m.cols(), 0);
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            cells[i][j] = scalar_traits<T>::to_string(m(i, j));
            width[j] = std::max(width[j], cells[i][j].size());
        }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << std::string(width[j] - cells[i][j].size(), ' ') << cells[i][j];
        }
        out << "\n";
    }
}

inline void append_index_list(std::ostream& out, const std::string& name, const std::vector<std::size_t>& idx) {
    out << name << ":";
    for (std::size_t v : idx) out << ' ' << v + 1;
    out << "\n";
}

template <Scalar T>
void append_row_vector(std::ostream& out, const std::string& name, const Matrix<T>& column) {
    out << name << ":";
    for (std::size_t i = 0; i < column.rows(); ++i) out << ' ' << scalar_traits<T>::to_string(column(i, 0));
    out << "\n";
}

}  // namespace detail

template <Scalar T>
std::string write_result_text(const EchelonForm<T>& ef) {
    std::ostringstream out;
    out << "rank: " << ef.rank << "\n";
    detail::append_index_list(out, "pivot_cols", ef.pivot_cols);
    detail::append_matrix_block(out, "Z", ef.Z);
    detail::append_matrix_block(out, "F", ef.F);
    detail::append_index_list(out, "P", ef.P.positions());
    out << "ops: mults=" << ef.op_count.mults << " divs=" << ef.op_count.divs << " add_subs=" << ef.op_count.add_subs
        << " row_swaps=" << ef.op_count.row_swaps << "\n";
    if (ef.E) detail::append_matrix_block(out, "E", *ef.E);
    return out.str();
}

template <Scalar T>
std::string write_result_text(const CRFactorization<T>& cr, std::optional<bool> verified = std::nullopt) {
    std::ostringstream out;
    out << "rank: " << cr.rank() << "\n";
    detail::append_index_list(out, "pivot_cols", cr.pivot_cols);
    detail::append_matrix_block(out, "C", cr.C);
    detail::append_matrix_block(out, "R", cr.R);
    detail::append_matrix_block(out, "F", cr.F);
    detail::append_index_list(out, "P", cr.P.positions());
    if (verified) out << "verified: " << (*verified ? "true" : "false") << "\n";
    return out.str();
}

template <Scalar T>
std::string write_result_text(const NullspaceBasis<T>& ns) {
    std::ostringstream out;
    detail::append_index_list(out, "free_cols", ns.free_cols);
    detail::append_matrix_block(out, "X", ns.X);
    return out.str();
}

template <Scalar T>
std::string write_result_text(const SolveResult<T>& sr) {
    std::ostringstream out;
    out << "status: " << solve_status_name(sr.status) << "\n";
    if (sr.particular) detail::append_row_vector(out, "particular", *sr.particular);
    detail::append_index_list(out, "free_cols", sr.nullspace.free_cols);
    detail::append_matrix_block(out, "X", sr.nullspace.X);
    return out.str();
}

template <typename R>
std::string write_result_structured(const R& result) {
    return structured_bytes(result_to_json(result));
}

}  // namespace echelon
