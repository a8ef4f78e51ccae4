// Tests for the shared-library C interface: status codes, opaque result
// handles, determinism of the serialized bytes, and the atomic file writer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "qwalk/qwalk.h"

namespace {

std::string take_bytes(qwalk_result* result) {
    REQUIRE(result != nullptr);
    const char* bytes = qwalk_result_bytes(result);
    REQUIRE(bytes != nullptr);
    std::string out(bytes, qwalk_result_size(result));
    qwalk_result_free(result);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("enumerate returns a JSON document and respects defaults") {
    qwalk_result* result = nullptr;
    int status = qwalk_enumerate("reverse-kreweras", "2", "3", "5", 6, "point(0,0)", "json",
                                 &result);
    REQUIRE(status == QWALK_OK);
    std::string bytes = take_bytes(result);
    CHECK(bytes.find("\"model\": \"reverse-kreweras\"") != std::string::npos);
    CHECK(bytes.find("\"a\": \"2\"") != std::string::npos);
    // [t^3] Q(0,0) = c*(a+b) = 25.
    CHECK(bytes.find("\"coeff\": \"25\"") != std::string::npos);

    // NULL weights mean 1, NULL selector means full, NULL format means json.
    result = nullptr;
    status = qwalk_enumerate("kreweras", nullptr, nullptr, nullptr, 4, nullptr, nullptr, &result);
    REQUIRE(status == QWALK_OK);
    bytes = take_bytes(result);
    CHECK(bytes.find("\"a\": \"1\"") != std::string::npos);
    CHECK(bytes.find("\"y_exp\"") != std::string::npos);
}

TEST_CASE("enumerate produces CSV on request") {
    qwalk_result* result = nullptr;
    int status = qwalk_enumerate("kreweras", "1", "1", "1", 5, "line_y(0)", "csv", &result);
    REQUIRE(status == QWALK_OK);
    std::string bytes = take_bytes(result);
    CHECK(bytes.find("# model=kreweras") != std::string::npos);
    CHECK(bytes.find("t_num,x_exp,y_exp,coeff") != std::string::npos);
}

TEST_CASE("solve returns the bundled solution document") {
    qwalk_result* result = nullptr;
    int status = qwalk_solve("reverse-kreweras", "2", "3", "5", 8, -1, &result);
    REQUIRE(status == QWALK_OK);
    CHECK(qwalk_result_verify_passed(result) == -1);
    CHECK(qwalk_result_runtime_seconds(result) >= 0.0);
    std::string bytes = take_bytes(result);
    CHECK(bytes.find("\"point_0_0\"") != std::string::npos);
    CHECK(bytes.find("\"line_y_0\"") != std::string::npos);
    CHECK(bytes.find("\"line_x_0\"") != std::string::npos);
    CHECK(bytes.find("\"diag_0\"") != std::string::npos);
    CHECK(bytes.find("\"determinants\"") != std::string::npos);
    CHECK(bytes.find("\"chosen_equations\"") != std::string::npos);
}

TEST_CASE("verify reports pass and sets the flag") {
    qwalk_result* result = nullptr;
    int status = qwalk_verify("kreweras", "1", "1", "1", 8, -1, &result);
    REQUIRE(status == QWALK_OK);
    CHECK(qwalk_result_verify_passed(result) == 1);
    std::string bytes = take_bytes(result);
    CHECK(bytes.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(bytes.find("\"first_mismatch\": \"none\"") != std::string::npos);
}

TEST_CASE("expand serves all four intermediate documents") {
    for (const char* what : {"delta-roots", "factorization", "kernel-roots", "determinants"}) {
        qwalk_result* result = nullptr;
        int status = qwalk_expand("reverse-kreweras", "2", "3", "5", 8, -1, what, &result);
        REQUIRE(status == QWALK_OK);
        std::string bytes = take_bytes(result);
        CHECK(bytes.find("\"what\"") != std::string::npos);
        CHECK(!bytes.empty());
    }
}

TEST_CASE("identical calls produce byte-identical results") {
    auto run = []() {
        qwalk_result* result = nullptr;
        REQUIRE(qwalk_solve("kreweras", "2", "3", "5", 7, -1, &result) == QWALK_OK);
        return take_bytes(result);
    };
    CHECK(run() == run());

    auto enumerate = []() {
        qwalk_result* result = nullptr;
        REQUIRE(qwalk_enumerate("reverse-kreweras", "1/2", "3", "2", 7, "diag(0)", "json",
                                &result) == QWALK_OK);
        return take_bytes(result);
    };
    CHECK(enumerate() == enumerate());
}

TEST_CASE("error paths set typed statuses and leave a message") {
    qwalk_result* result = nullptr;

    CHECK(qwalk_enumerate("pentagonal", "1", "1", "1", 4, nullptr, nullptr, &result) ==
          QWALK_ERR_UNKNOWN_MODEL);
    CHECK(result == nullptr);
    CHECK(std::strlen(qwalk_last_error_message()) > 0);

    CHECK(qwalk_enumerate("kreweras", "zero", "1", "1", 4, nullptr, nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "-2", "1", "1", 4, nullptr, nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "0", "1", "1", 4, nullptr, nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "1", "1", "1", -3, nullptr, nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "1", "1", "1", 4, "ring(2)", nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "1", "1", "1", 4, "point(1)", nullptr, &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "1", "1", "1", 4, nullptr, "xml", &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_enumerate("kreweras", "1", "1", "1", 4, "line_y(-1)", nullptr, &result) ==
          QWALK_ERR_SELECTOR_OUT_OF_RANGE);
    CHECK(qwalk_expand("kreweras", "1", "1", "1", 4, -1, "everything", &result) ==
          QWALK_ERR_USAGE);
    CHECK(qwalk_solve(nullptr, "1", "1", "1", 4, -1, &result) == QWALK_ERR_USAGE);
    CHECK(qwalk_solve("kreweras", "1", "1", "1", 4, -1, nullptr) == QWALK_ERR_USAGE);

    CHECK(std::string(qwalk_status_name(QWALK_OK)) == "ok");
    CHECK(std::string(qwalk_status_name(QWALK_ERR_USAGE)) == "UsageError");
    CHECK(std::string(qwalk_status_name(QWALK_ERR_UNKNOWN_MODEL)) == "UnknownModel");
}

TEST_CASE("result accessors tolerate null handles") {
    CHECK(std::string(qwalk_result_bytes(nullptr)).empty());
    CHECK(qwalk_result_size(nullptr) == 0);
    CHECK(qwalk_result_verify_passed(nullptr) == -1);
    CHECK(qwalk_result_runtime_seconds(nullptr) == 0.0);
    qwalk_result_free(nullptr);  // must be a no-op
}

TEST_CASE("write_output writes atomically and to stdout") {
    std::string path = "capi_write_test.json";
    std::remove(path.c_str());
    std::string payload = "{\"check\": \"payload\"}\n";
    REQUIRE(qwalk_write_output(path.c_str(), payload.c_str(), payload.size()) == QWALK_OK);
    CHECK(read_file(path) == payload);
    // Overwrite must replace the content completely.
    std::string shorter = "{}\n";
    REQUIRE(qwalk_write_output(path.c_str(), shorter.c_str(), shorter.size()) == QWALK_OK);
    CHECK(read_file(path) == shorter);
    std::remove(path.c_str());

    // Unwritable directory fails cleanly with a usage error.
    CHECK(qwalk_write_output("no_such_dir/sub/file.json", payload.c_str(), payload.size()) ==
          QWALK_ERR_USAGE);
}
