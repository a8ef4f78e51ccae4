// Command-line regression tests. The test runner passes the path to the
// installed CLI binary as the first argument; every test shells out to it.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string command = "'" + g_cli + "' " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    size_t got;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Returns the rational coefficient string at t-order `order` (x_exp 0) of a
// series document, or "0" when the term is absent.
std::string coeff_at(const nlohmann::json& doc, int order, int x_exp = 0) {
    int ram = doc.at("ramification").get<int>();
    for (const auto& term : doc.at("terms")) {
        if (term.at("t_num").get<int>() == order * ram && term.at("x_exp").get<int>() == x_exp)
            return term.at("coeff").get<std::string>();
    }
    return "0";
}

}  // namespace

TEST_CASE("verify subcommand confirms the solver against enumeration") {
    RunResult run = run_cli(
        "verify --model reverse-kreweras --a 2 --b 3 --c 5 --order 15");
    CHECK(run.exit_code == 0);
    nlohmann::json report = nlohmann::json::parse(run.out);
    CHECK(report.at("status") == "pass");
    CHECK(report.at("model") == "reverse-kreweras");
    for (const auto& row : report.at("rows")) {
        CHECK(row.at("first_mismatch") == "none");
        CHECK(row.at("orders_checked").get<int>() == 15);
    }
}

TEST_CASE("enumerate confirms the documented origin coefficient") {
    RunResult run = run_cli(
        "enumerate --model reverse-kreweras --a 2 --b 3 --c 5 --order 6 --select 'point(0,0)'");
    REQUIRE(run.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(run.out);
    // [t^3] Q(0,0) = c*(a+b) = 5*(2+3) = 25.
    CHECK(coeff_at(doc, 3) == "25");
    CHECK(coeff_at(doc, 0) == "1");
}

TEST_CASE("expand delta-roots reproduces the printed vanishing branch") {
    RunResult run = run_cli("expand --model reverse-kreweras --what delta-roots --order 11");
    REQUIRE(run.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(run.out);
    CHECK(doc.at("what") == "delta-roots");
    const nlohmann::json& x1 = doc.at("series").at("X_1");
    // X_1 = 4 t^2 + 32 t^5 + 448 t^8 + O(t^11).
    CHECK(coeff_at(x1, 2) == "4");
    CHECK(coeff_at(x1, 5) == "32");
    CHECK(coeff_at(x1, 8) == "448");
    CHECK(coeff_at(x1, 3) == "0");
    CHECK(doc.at("series").contains("X_2"));
    CHECK(doc.at("series").contains("X_3"));
}

TEST_CASE("solve on the unweighted direct model prints the excursion numbers") {
    RunResult run = run_cli("solve --model kreweras --order 12");
    REQUIRE(run.exit_code == 0);
    nlohmann::json doc = nlohmann::json::parse(run.out);
    const nlohmann::json& q00 = doc.at("series").at("point_0_0");
    CHECK(coeff_at(q00, 0) == "1");
    CHECK(coeff_at(q00, 3) == "2");
    CHECK(coeff_at(q00, 6) == "16");
    CHECK(coeff_at(q00, 9) == "192");
    CHECK(coeff_at(q00, 1) == "0");
    CHECK(coeff_at(q00, 2) == "0");
}

TEST_CASE("repeated invocations are byte-identical") {
    const std::string args = "solve --model reverse-kreweras --a 1/2 --b 3 --c 2 --order 8";
    RunResult first = run_cli(args);
    RunResult second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    REQUIRE(second.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "cli_out_test.json";
    std::remove(path.c_str());
    RunResult direct = run_cli("enumerate --model kreweras --order 6 --select 'diag(0)'");
    RunResult filed =
        run_cli("enumerate --model kreweras --order 6 --select 'diag(0)' --out " + path);
    REQUIRE(direct.exit_code == 0);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(read_file(path) == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("csv output serves single-series documents only") {
    RunResult csv = run_cli(
        "enumerate --model kreweras --order 5 --select 'line_y(0)' --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("# model=kreweras", 0) == 0);
    CHECK(csv.out.find("t_num,x_exp,y_exp,coeff") != std::string::npos);

    RunResult csv_solve = run_cli("solve --model kreweras --order 5 --format csv");
    CHECK(csv_solve.exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate --model kreweras").exit_code == 2);
    CHECK(run_cli("solve").exit_code == 2);  // --model is required
    CHECK(run_cli("solve --model hexagonal --order 4").exit_code == 2);
    CHECK(run_cli("solve --model kreweras --order -1").exit_code == 2);
    CHECK(run_cli("solve --model kreweras --order 4 --format xml").exit_code == 2);
    CHECK(run_cli("enumerate --model kreweras --order 4 --select 'ring(1)'").exit_code == 2);
    CHECK(run_cli("expand --model kreweras --order 4 --what everything").exit_code == 2);
    CHECK(run_cli("expand --model kreweras --order 4").exit_code == 2);  // --what required
}

TEST_CASE("computational failures exit with code 3") {
    // A structurally impossible selector is a computational error, not usage.
    RunResult run = run_cli("enumerate --model kreweras --order 4 --select 'line_y(-1)'");
    CHECK(run.exit_code == 3);
}

TEST_CASE("--help succeeds and names every subcommand") {
    RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    for (const char* name : {"enumerate", "solve", "verify", "expand"})
        CHECK(help.out.find(name) != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary> [doctest args]\n", argv[0]);
        return 1;
    }
    g_cli = argv[1];
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
