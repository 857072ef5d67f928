// Command-line front end: rref, cr, nullspace, solve, block, intersect, bench.
//
// Exit codes: 0 success (an inconsistent system is a valid answer), 2 input
// or usage errors, 3 violated mathematical preconditions, 1 internal errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <echelon/echelon.hpp>
#include <echelon/oracle.hpp>

namespace {

using namespace echelon;

struct CommonOpts {
    std::string input;  // empty or "-" reads stdin
    std::string mode = "auto";
    double tol_abs = 0.0;
    double tol_rel = 1e-10;
    std::string pivot = "auto";
    std::string output = "text";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
    if (with_input) cmd->add_option("input", opts.input, "matrix file (CSV of rationals or Matrix Market); - for stdin");
    cmd->add_option("--mode", opts.mode, "arithmetic mode")->check(CLI::IsMember({"auto", "exact", "float"}));
    cmd->add_option("--tol-abs", opts.tol_abs, "absolute zero tolerance (float mode)");
    cmd->add_option("--tol-rel", opts.tol_rel, "relative zero tolerance (float mode)");
    cmd->add_option("--pivot", opts.pivot, "pivot rule")->check(CLI::IsMember({"auto", "first", "largest"}));
    cmd->add_option("--output", opts.output, "output form")->check(CLI::IsMember({"text", "structured"}));
}

MatrixDocument load(const std::string& path) {
    if (path.empty() || path == "-") return read_matrix(std::cin);
    return read_matrix_file(path);
}

struct Resolved {
    bool use_float = false;
    ZeroPolicy policy;
    std::optional<PivotRule> rule;
    bool structured = false;
};

/// Applies mode/tolerance/pivot flags against what the document contains.
Resolved resolve(const CLI::App* cmd, const CommonOpts& opts, bool doc_is_exact) {
    Resolved r;
    if (opts.mode == "float")
        r.use_float = true;
    else if (opts.mode == "exact") {
        if (!doc_is_exact) throw ParseError("exact mode requires rational input, got float entries");
        r.use_float = false;
    } else
        r.use_float = !doc_is_exact;

    bool tol_given = cmd->count("--tol-abs") > 0 || cmd->count("--tol-rel") > 0;
    if (!r.use_float && tol_given)
        throw CLI::ValidationError("--tol-abs/--tol-rel only apply in float mode");

    r.policy = r.use_float ? ZeroPolicy::thresholded(opts.tol_abs, opts.tol_rel) : ZeroPolicy::exact();
    if (opts.pivot == "first") r.rule = PivotRule::FirstNonzero;
    if (opts.pivot == "largest") r.rule = PivotRule::LargestMagnitude;
    r.structured = opts.output == "structured";
    return r;
}

Matrix<double> as_float(const MatrixDocument& doc) {
    return doc.is_exact() ? to_double_matrix(doc.exact()) : doc.floating();
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t limit, const char* what) {
    std::vector<std::size_t> out;
    for (std::string_view tok : detail::split(text, ',')) {
        tok = detail::trim(tok);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
            throw ParseError(std::string(what) + " list expects 1-based integers, got \"" + std::string(tok) + "\"");
        if (v > limit) throw IndexOutOfRange(std::string(what) + " " + std::to_string(v) + " of " + std::to_string(limit));
        out.push_back(v - 1);
    }
    return out;
}

template <Scalar T>
T determinant_from_echelon(const EchelonForm<T>& ef) {
    if (ef.rank < ef.Z.rows()) return scalar_traits<T>::zero();
    return ef.op_count.row_swaps % 2 == 0 ? ef.pivot_product : -ef.pivot_product;
}

// --- subcommands ---

template <Scalar T>
void run_rref(const Matrix<T>& a, const Resolved& r) {
    EchelonForm<T> ef = rref(a, r.policy, r.rule);
    std::cout << (r.structured ? write_result_structured(ef) : write_result_text(ef));
}

template <Scalar T>
void run_cr(const Matrix<T>& a, const Resolved& r) {
    CRFactorization<T> cr = cr_factor(a, r.policy);
    bool verified = cr_verified(a, cr);
    if (r.structured) {
        json j = result_to_json(cr);
        j["verified"] = verified;
        std::cout << structured_bytes(j);
    } else {
        std::cout << write_result_text(cr, verified);
    }
}

template <Scalar T>
void run_nullspace(const Matrix<T>& a, const Resolved& r) {
    NullspaceBasis<T> ns = nullspace(a, r.policy);
    std::cout << (r.structured ? write_result_structured(ns) : write_result_text(ns));
}

template <Scalar T>
void run_solve(const Matrix<T>& a, const Matrix<T>& b, const Resolved& r) {
    SolveResult<T> sr = solve(a, b, r.policy);
    std::cout << (r.structured ? write_result_structured(sr) : write_result_text(sr));
}

template <Scalar T>
void run_block(const Matrix<T>& a, const std::string& rows_arg, const std::string& cols_arg, const Resolved& r) {
    Permutation p_r, p_c;
    std::size_t rank;
    if (rows_arg.empty() && cols_arg.empty()) {
        BlockPartition<T> part = find_invertible_block(a, r.policy);
        p_r = part.row_perm;
        p_c = part.col_perm;
        rank = part.r();
    } else {
        if (rows_arg.empty() || cols_arg.empty()) throw ParseError("--rows and --cols must be given together");
        std::vector<std::size_t> rows = parse_index_list(rows_arg, a.rows(), "row");
        std::vector<std::size_t> cols = parse_index_list(cols_arg, a.cols(), "column");
        if (rows.size() != cols.size())
            throw WrongCardinality(std::to_string(rows.size()) + " rows vs " + std::to_string(cols.size()) + " columns");
        p_r = Permutation(detail::extend_selection(rows, a.rows()));
        p_c = Permutation(detail::extend_selection(cols, a.cols()));
        rank = rows.size();
    }

    EchelonForm<T> ef = block_eliminate(a, p_r, p_c, rank, r.policy);
    Matrix<T> b = detail::gather(a, p_r, p_c);
    std::vector<std::size_t> lead = index_range(rank);
    std::vector<std::size_t> tail_rows, tail_cols;
    for (std::size_t i = rank; i < a.rows(); ++i) tail_rows.push_back(i);
    for (std::size_t j = rank; j < a.cols(); ++j) tail_cols.push_back(j);
    Matrix<T> w = submatrix(b, lead, lead);
    Matrix<T> h = submatrix(b, lead, tail_cols);
    Matrix<T> jj = submatrix(b, tail_rows, lead);
    Matrix<T> k = submatrix(b, tail_rows, tail_cols);

    if (r.structured) {
        json j{{"format", "echelon.result/1"},
               {"kind", "block"},
               {"mode", detail::mode_name<T>()},
               {"r", rank},
               {"rows", detail::one_based(p_r.positions())},
               {"cols", detail::one_based(p_c.positions())},
               {"W", matrix_to_json(w)},
               {"H", matrix_to_json(h)},
               {"J", matrix_to_json(jj)},
               {"K", matrix_to_json(k)},
               {"F", matrix_to_json(ef.F)},
               {"Z", matrix_to_json(ef.Z)},
               {"zero_rows_verified", true}};
        std::cout << structured_bytes(j);
    } else {
        std::ostringstream out;
        out << "r: " << rank << "\n";
        detail::append_index_list(out, "rows", p_r.positions());
        detail::append_index_list(out, "cols", p_c.positions());
        detail::append_matrix_block(out, "W", w);
        detail::append_matrix_block(out, "H", h);
        detail::append_matrix_block(out, "J", jj);
        detail::append_matrix_block(out, "K", k);
        detail::append_matrix_block(out, "F", ef.F);
        out << "zero_rows_verified: true\n";
        std::cout << out.str();
    }
}

template <Scalar T>
void run_intersect(const Matrix<T>& a, const std::string& rows_arg, const std::string& cols_arg, const Resolved& r) {
    std::vector<std::size_t> rows = parse_index_list(rows_arg, a.rows(), "row");
    std::vector<std::size_t> cols = parse_index_list(cols_arg, a.cols(), "column");
    IntersectionCheck<T> ic = intersection_check(a, rows, cols, r.policy);
    T det = determinant_from_echelon(rref(ic.W, r.policy));

    if (r.structured) {
        json j{{"format", "echelon.result/1"},
               {"kind", "intersect"},
               {"mode", detail::mode_name<T>()},
               {"rows", detail::one_based(rows)},
               {"cols", detail::one_based(cols)},
               {"W", matrix_to_json(ic.W)},
               {"invertible", ic.invertible},
               {"det", scalar_traits<T>::to_string(det)}};
        std::cout << structured_bytes(j);
    } else {
        std::ostringstream out;
        detail::append_matrix_block(out, "W", ic.W);
        out << "invertible: " << (ic.invertible ? "true" : "false") << "\n";
        out << "det: " << scalar_traits<T>::to_string(det) << "\n";
        std::cout << out.str();
    }
}

struct BenchRow {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t gauss_ops = 0;
    std::uint64_t gauss_jordan_ops = 0;
};

/// Same seed, same report, byte for byte: per-trial seeds derive from the
/// master seed, and the counters are exact integers.
std::vector<BenchRow> run_bench_rows(const std::vector<std::size_t>& sizes, std::size_t trials, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        BenchRow row{n, trials, 0, 0};
        for (std::size_t t = 0; t < trials; ++t) {
            std::uint64_t trial_seed = SeededRng(seed).fork(n * 1000003 + t).next();
            RandomMatrixSpec spec{n, n, n, 9, trial_seed};
            Matrix<Rational> a = random_rank_r(spec);
            SeededRng rhs_rng(trial_seed ^ 0x5bd1e995);
            Matrix<Rational> b = random_integer_matrix(n, 1, 9, rhs_rng);

            auto fwd = gauss_forward(a, b);
            OpCount gauss_ops = fwd.op_count;
            back_substitute(fwd.U, fwd.c, ZeroPolicy::exact(), &gauss_ops);
            row.gauss_ops += gauss_ops.arithmetic_total();

            EchelonForm<Rational> gj = rref(hcat(a, b));
            row.gauss_jordan_ops += gj.op_count.arithmetic_total();
        }
        rows.push_back(row);
    }
    return rows;
}

void run_bench(const std::string& sizes_arg, std::size_t trials, std::uint64_t seed, bool structured) {
    std::vector<std::size_t> sizes;
    for (std::string_view tok : detail::split(sizes_arg, ',')) {
        tok = detail::trim(tok);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
            throw ParseError("bad size \"" + std::string(tok) + "\"");
        sizes.push_back(v);
    }
    std::vector<BenchRow> rows = run_bench_rows(sizes, trials, seed);

    if (structured) {
        json sizes_json = json::array();
        for (const BenchRow& r : rows) {
            double ratio = r.gauss_ops ? double(r.gauss_jordan_ops) / double(r.gauss_ops) : 0.0;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", ratio);
            sizes_json.push_back(json{{"n", r.n},
                                      {"trials", r.trials},
                                      {"gauss_ops", r.gauss_ops},
                                      {"gauss_jordan_ops", r.gauss_jordan_ops},
                                      {"ratio", buf}});
        }
        json j{{"format", "echelon.result/1"}, {"kind", "bench"}, {"seed", seed}, {"sizes", std::move(sizes_json)}};
        std::cout << structured_bytes(j);
    } else {
        std::printf("n trials gauss_ops gauss_jordan_ops ratio\n");
        for (const BenchRow& r : rows) {
            double ratio = r.gauss_ops ? double(r.gauss_jordan_ops) / double(r.gauss_ops) : 0.0;
            std::printf("%zu %zu %llu %llu %.3f\n", r.n, r.trials, (unsigned long long)r.gauss_ops,
                        (unsigned long long)r.gauss_jordan_ops, ratio);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rank-revealing elimination: rref, A = CR, nullspace bases, block elimination"};
    app.require_subcommand(1);

    CommonOpts rref_opts, cr_opts, ns_opts, solve_opts, block_opts, intersect_opts;
    std::string rhs_path, block_rows, block_cols, isect_rows, isect_cols;
    std::string bench_sizes = "5,10,20,40";
    std::size_t bench_trials = 3;
    std::uint64_t bench_seed = 1;
    std::string bench_output = "text";

    CLI::App* c_rref = app.add_subcommand("rref", "reduced row echelon form Z = [I F; 0 0] P");
    add_common(c_rref, rref_opts);
    CLI::App* c_cr = app.add_subcommand("cr", "column-row factorization A = C R");
    add_common(c_cr, cr_opts);
    CLI::App* c_ns = app.add_subcommand("nullspace", "special-solution basis X with A X = 0");
    add_common(c_ns, ns_opts);
    CLI::App* c_solve = app.add_subcommand("solve", "general solution of A x = b");
    add_common(c_solve, solve_opts);
    c_solve->add_option("--rhs", rhs_path, "right-hand side file (single column)")->required();
    CLI::App* c_block = app.add_subcommand("block", "block elimination [W H; J K] -> [I F; 0 0]");
    add_common(c_block, block_opts);
    c_block->add_option("--rows", block_rows, "1-based pivot rows (with --cols); found automatically if omitted");
    c_block->add_option("--cols", block_cols, "1-based pivot columns");
    CLI::App* c_isect = app.add_subcommand("intersect", "invertibility of the rows-by-columns intersection");
    add_common(c_isect, intersect_opts);
    c_isect->add_option("--rows", isect_rows, "1-based independent rows")->required();
    c_isect->add_option("--cols", isect_cols, "1-based independent columns")->required();
    CLI::App* c_bench = app.add_subcommand("bench", "operation counts: Gauss solve vs full Gauss-Jordan");
    c_bench->add_option("--sizes", bench_sizes, "comma-separated system sizes");
    c_bench->add_option("--trials", bench_trials, "systems per size");
    c_bench->add_option("--seed", bench_seed, "generator seed");
    c_bench->add_option("--output", bench_output, "output form")->check(CLI::IsMember({"text", "structured"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_bench) {
            run_bench(bench_sizes, bench_trials, bench_seed, bench_output == "structured");
            return 0;
        }

        auto dispatch = [&](CLI::App* cmd, const CommonOpts& opts, auto&& run_exact, auto&& run_float) {
            MatrixDocument doc = load(opts.input);
            Resolved r = resolve(cmd, opts, doc.is_exact());
            if (r.use_float)
                run_float(as_float(doc), r);
            else
                run_exact(doc.exact(), r);
        };

        if (*c_rref)
            dispatch(
                c_rref, rref_opts, [](const auto& a, const Resolved& r) { run_rref(a, r); },
                [](const auto& a, const Resolved& r) { run_rref(a, r); });
        else if (*c_cr)
            dispatch(
                c_cr, cr_opts, [](const auto& a, const Resolved& r) { run_cr(a, r); },
                [](const auto& a, const Resolved& r) { run_cr(a, r); });
        else if (*c_ns)
            dispatch(
                c_ns, ns_opts, [](const auto& a, const Resolved& r) { run_nullspace(a, r); },
                [](const auto& a, const Resolved& r) { run_nullspace(a, r); });
        else if (*c_solve) {
            MatrixDocument doc = load(solve_opts.input);
            MatrixDocument rhs = read_matrix_file(rhs_path);
            Resolved r = resolve(c_solve, solve_opts, doc.is_exact() && rhs.is_exact());
            if (r.use_float) {
                Matrix<double> b = as_float(rhs);
                if (b.cols() != 1 && b.rows() == 1) b = b.transpose();
                run_solve(as_float(doc), b, r);
            } else {
                Matrix<Rational> b = rhs.exact();
                if (b.cols() != 1 && b.rows() == 1) b = b.transpose();
                run_solve(doc.exact(), b, r);
            }
        } else if (*c_block)
            dispatch(
                c_block, block_opts,
                [&](const auto& a, const Resolved& r) { run_block(a, block_rows, block_cols, r); },
                [&](const auto& a, const Resolved& r) { run_block(a, block_rows, block_cols, r); });
        else if (*c_isect)
            dispatch(
                c_isect, intersect_opts,
                [&](const auto& a, const Resolved& r) { run_intersect(a, isect_rows, isect_cols, r); },
                [&](const auto& a, const Resolved& r) { run_intersect(a, isect_rows, isect_cols, r); });
        return 0;
    } catch (const DependentRowsGiven& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DependentColumnsGiven& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const WrongCardinality& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularBlock& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const RankMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SingularTriangular& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
