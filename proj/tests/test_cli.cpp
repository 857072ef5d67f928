// End-to-end checks of the command-line tool: golden outputs, exit codes and
// byte determinism, driven through the shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef ECHELON_CLI_PATH
#error "ECHELON_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_shell(const std::string& command) {
    RunResult r;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(ECHELON_CLI_PATH) + " " + args;
    cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
    return run_shell(cmd);
}

std::string data(const std::string& name) { return std::string(ECHELON_DATA_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/echelon_cli_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("rref golden text output") {
    RunResult r = run_cli("rref " + data("example_3x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "rank: 2"));
    CHECK(contains(r.out, "pivot_cols: 1 2"));
    CHECK(contains(r.out, "1 0 3 5"));
    CHECK(contains(r.out, "0 1 4 6"));
    CHECK(contains(r.out, "0 0 0 0"));
}

TEST_CASE("rref reads matrix market and stdin") {
    RunResult mm = run_cli("rref " + data("example_3x4.mtx"));
    CHECK(mm.exit_code == 0);
    CHECK(contains(mm.out, "rank: 2"));

    std::string path = write_temp("stdin.csv", "1,2\n2,4\n");
    RunResult piped = run_shell("cat " + path + " | " + ECHELON_CLI_PATH + " rref - 2>/dev/null");
    CHECK(piped.exit_code == 0);
    CHECK(contains(piped.out, "rank: 1"));
}

TEST_CASE("empty input is a legal rank-zero matrix") {
    std::string path = write_temp("empty.csv", "");
    RunResult r = run_cli("rref " + path);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "rank: 0"));
}

TEST_CASE("ragged csv exits 2 and names the line") {
    std::string path = write_temp("ragged.csv", "1,2\n3\n");
    RunResult r = run_cli("rref " + path, true);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.out, "line 2"));
}

TEST_CASE("structured output is deterministic and machine readable") {
    RunResult first = run_cli("rref --output structured " + data("example_3x4.csv"));
    RunResult second = run_cli("rref --output structured " + data("example_3x4.csv"));
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);

    auto j = nlohmann::json::parse(first.out);
    CHECK(j["rank"] == 2);
    CHECK(j["pivot_cols"] == nlohmann::json::array({1, 2}));
    CHECK(j["mode"] == "exact");
    CHECK(j["Z"]["entries"][0] == nlohmann::json::array({"1", "0", "3", "5"}));
}

TEST_CASE("cr reports pivot columns and a computed verified flag") {
    RunResult r = run_cli("cr " + data("permuted_2x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "pivot_cols: 1 3"));
    CHECK(contains(r.out, "verified: true"));

    RunResult structured = run_cli("cr --output structured " + data("example_3x4.csv"));
    auto j = nlohmann::json::parse(structured.out);
    CHECK(j["verified"] == true);
    CHECK(j["C"]["entries"][2] == nlohmann::json::array({"4", "9"}));
}

TEST_CASE("nullspace golden output") {
    RunResult r = run_cli("nullspace " + data("example_3x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "free_cols: 3 4"));
    CHECK(contains(r.out, "-3 -5"));
    CHECK(contains(r.out, "-4 -6"));
}

TEST_CASE("solve: dependent right-hand side has infinitely many solutions") {
    RunResult r = run_cli("solve --rhs " + data("rhs_col4.csv") + " " + data("example_3x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "status: infinite"));
    CHECK(contains(r.out, "particular: 5 6 0 0"));
}

TEST_CASE("solve: inconsistent system is a valid answer with exit 0") {
    RunResult r = run_cli("solve --rhs " + data("rhs_inconsistent.csv") + " " + data("example_3x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "status: inconsistent"));
}

TEST_CASE("intersect golden and dependent rejection") {
    RunResult good = run_cli("intersect --rows 1,2 --cols 1,2 " + data("example_3x4.csv"));
    CHECK(good.exit_code == 0);
    CHECK(contains(good.out, "invertible: true"));
    CHECK(contains(good.out, "det: 1"));

    std::string dep = write_temp("dependent.csv", "1,2,0\n1,2,0\n0,1,1\n");
    RunResult bad = run_cli("intersect --rows 1,2 --cols 1,2 " + dep, true);
    CHECK(bad.exit_code == 3);

    RunResult cardinality = run_cli("intersect --rows 1 --cols 1 " + data("example_3x4.csv"), true);
    CHECK(cardinality.exit_code == 3);
}

TEST_CASE("block subcommand finds and eliminates the leading block") {
    RunResult r = run_cli("block " + data("example_3x4.csv"));
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "r: 2"));
    CHECK(contains(r.out, "3 5"));
    CHECK(contains(r.out, "4 6"));
    CHECK(contains(r.out, "zero_rows_verified: true"));

    RunResult explicit_blocks = run_cli("block --rows 1,2 --cols 1,2 " + data("example_3x4.csv"));
    CHECK(explicit_blocks.exit_code == 0);
    CHECK(contains(explicit_blocks.out, "zero_rows_verified: true"));

    std::string singular = write_temp("singular_block.csv", "1,2,1\n2,4,3\n0,0,1\n");
    RunResult rejected = run_cli("block --rows 1,2 --cols 1,2 " + singular, true);
    CHECK(rejected.exit_code == 3);
}

TEST_CASE("float mode and tolerance flags") {
    RunResult f = run_cli("rref --mode float --output structured " + data("example_3x4.csv"));
    CHECK(f.exit_code == 0);
    auto j = nlohmann::json::parse(f.out);
    CHECK(j["mode"] == "float");
    CHECK(j["rank"] == 2);

    RunResult rejected = run_cli("rref --mode exact --tol-rel 1e-8 " + data("example_3x4.csv"), true);
    CHECK(rejected.exit_code == 2);

    std::string floats = write_temp("floats.csv", "1.5,3.0\n0.5,1.0\n");
    RunResult exact_refused = run_cli("rref --mode exact " + floats, true);
    CHECK(exact_refused.exit_code == 2);
    RunResult auto_mode = run_cli("rref --output structured " + floats);
    CHECK(nlohmann::json::parse(auto_mode.out)["mode"] == "float");
}

TEST_CASE("bench is deterministic per seed and favors gauss") {
    std::string args = "bench --sizes 2,4 --trials 2 --seed 7 --output structured";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);

    auto j = nlohmann::json::parse(first.out);
    for (const auto& row : j["sizes"]) {
        CHECK(row["gauss_ops"].get<std::uint64_t>() <= row["gauss_jordan_ops"].get<std::uint64_t>());
    }

    RunResult text = run_cli("bench --sizes 3 --trials 1 --seed 9");
    CHECK(text.exit_code == 0);
    CHECK(contains(text.out, "n trials gauss_ops gauss_jordan_ops ratio"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("rref /nonexistent/input.csv", true).exit_code == 2);
    CHECK(run_cli("frobnicate", true).exit_code == 2);
    CHECK(run_cli("rref --pivot sideways " + data("example_3x4.csv"), true).exit_code == 2);
    CHECK(run_cli("", true).exit_code == 2);
    CHECK(run_cli("intersect --rows 1,9 --cols 1,2 " + data("example_3x4.csv"), true).exit_code == 2);
}
