// Command-line front end for the quarter-plane walk solver; all computation
// goes through the C library interface.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 computational error (the typed error name is printed to stderr).
#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "qwalk/qwalk.h"

namespace {

struct Options {
    std::string model;
    std::string a = "1", b = "1", c = "1";
    int order = 20;
    int working_order = -1;  // -1: automatic (at least twice the order)
    std::string format = "json";
    std::string out = "-";
    std::string select = "full";
    std::string what;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--model", opt.model, "walk model")
        ->required()
        ->check(CLI::IsMember({"kreweras", "reverse-kreweras"}));
    cmd->add_option("--a", opt.a, "weight of x-axis visits (positive rational, e.g. 1/2)");
    cmd->add_option("--b", opt.b, "weight of y-axis visits (positive rational)");
    cmd->add_option("--c", opt.c, "weight of origin visits (positive rational)");
    cmd->add_option("--order", opt.order, "highest t-order to report")
        ->check(CLI::Range(0, 1 << 20));
    cmd->add_option("--working-order", opt.working_order,
                    "internal truncation order (default: automatic, at least twice --order)")
        ->check(CLI::Range(0, 1 << 20));
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "output path ('-' = stdout; written atomically)");
}

int report_failure(int status) {
    std::fprintf(stderr, "error: %s: %s\n", qwalk_status_name(status),
                 qwalk_last_error_message());
    return status == QWALK_ERR_USAGE ? 2 : 3;
}

// Writes the result document, reports the runtime on stderr, and frees the
// handle. `success_exit` is returned when writing succeeds.
int finish(qwalk_result* result, const std::string& out_path, int success_exit) {
    int status = qwalk_write_output(out_path.c_str(), qwalk_result_bytes(result),
                                    qwalk_result_size(result));
    double runtime = qwalk_result_runtime_seconds(result);
    qwalk_result_free(result);
    if (status != QWALK_OK) return report_failure(status);
    std::fprintf(stderr, "runtime: %.3f s\n", runtime);
    return success_exit;
}

int require_json_format(const Options& opt, const char* subcommand) {
    if (opt.format == "json") return 0;
    std::fprintf(stderr,
                 "error: UsageError: csv output is only available for single-series "
                 "documents; %s produces a multi-part document\n",
                 subcommand);
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact series solver for Kreweras-type quarter-plane walks with "
        "boundary interaction weights"};
    app.require_subcommand(1);

    Options opt;

    CLI::App* enumerate = app.add_subcommand(
        "enumerate", "brute-force enumeration of a selected generating series");
    add_common_flags(enumerate, opt);
    enumerate->add_option(
        "--select", opt.select,
        "series to extract: full, line_y(i), line_x(i), diag(j), or point(i,j)");

    CLI::App* solve =
        app.add_subcommand("solve", "kernel-method solve of all boundary series");
    add_common_flags(solve, opt);

    CLI::App* verify = app.add_subcommand(
        "verify", "solve and compare against brute-force enumeration");
    add_common_flags(verify, opt);

    CLI::App* expand = app.add_subcommand(
        "expand", "intermediate objects of the solving pipeline");
    add_common_flags(expand, opt);
    expand
        ->add_option("--what", opt.what,
                     "object to expand: delta-roots, factorization, kernel-roots, or "
                     "determinants")
        ->required()
        ->check(CLI::IsMember(
            {"delta-roots", "factorization", "kernel-roots", "determinants"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    qwalk_result* result = nullptr;

    if (enumerate->parsed()) {
        int status = qwalk_enumerate(opt.model.c_str(), opt.a.c_str(), opt.b.c_str(),
                                     opt.c.c_str(), opt.order, opt.select.c_str(),
                                     opt.format.c_str(), &result);
        if (status != QWALK_OK) return report_failure(status);
        return finish(result, opt.out, 0);
    }

    if (solve->parsed()) {
        if (int code = require_json_format(opt, "solve")) return code;
        int status = qwalk_solve(opt.model.c_str(), opt.a.c_str(), opt.b.c_str(),
                                 opt.c.c_str(), opt.order, opt.working_order, &result);
        if (status != QWALK_OK) return report_failure(status);
        return finish(result, opt.out, 0);
    }

    if (verify->parsed()) {
        if (int code = require_json_format(opt, "verify")) return code;
        int status = qwalk_verify(opt.model.c_str(), opt.a.c_str(), opt.b.c_str(),
                                  opt.c.c_str(), opt.order, opt.working_order, &result);
        if (status != QWALK_OK) return report_failure(status);
        int passed = qwalk_result_verify_passed(result);
        std::fprintf(stderr, "verification: %s\n", passed == 1 ? "pass" : "fail");
        return finish(result, opt.out, passed == 1 ? 0 : 1);
    }

    if (expand->parsed()) {
        if (int code = require_json_format(opt, "expand")) return code;
        int status = qwalk_expand(opt.model.c_str(), opt.a.c_str(), opt.b.c_str(),
                                  opt.c.c_str(), opt.order, opt.working_order,
                                  opt.what.c_str(), &result);
        if (status != QWALK_OK) return report_failure(status);
        return finish(result, opt.out, 0);
    }

    std::fprintf(stderr, "error: UsageError: no subcommand given\n");
    return 2;
}
