// Serialization tests: lossless JSON and CSV round-trips, canonical rational
// strings, located parse errors, and the verification-report document.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <tuple>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "serialize.hpp"
#include "walk_oracle.hpp"

using namespace qwalk;

namespace {

Rational rat(long num, long den = 1) {
    Rational r(static_cast<int>(num));
    r /= Rational(static_cast<int>(den));
    return r;
}

struct Gen {
    std::mt19937 rng{20260816u};

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    Rational rational() {
        int num = uniform(-40, 40);
        if (num == 0) num = 7;
        return rat(num, uniform(1, 12));
    }

    SeriesDocument document(bool with_y) {
        SeriesDocument doc;
        doc.model = uniform(0, 1) ? "kreweras" : "reverse-kreweras";
        doc.a = to_string(rational());
        doc.b = to_string(rational());
        doc.c = to_string(rational());
        doc.ramification = uniform(1, 3);
        doc.variables = "t marks walk length; test document";
        doc.accurate_order = uniform(4, 30);
        int n_terms = uniform(0, 14);
        std::set<std::tuple<int, int, int>> used;
        for (int k = 0; k < n_terms; ++k) {
            SeriesTerm term;
            term.t_num = uniform(-6, doc.accurate_order);
            term.x_exp = uniform(-5, 8);
            if (with_y) term.y_exp = uniform(-3, 6);
            term.coeff = rational();
            auto key = std::make_tuple(term.t_num, term.x_exp, with_y ? *term.y_exp : 0);
            if (!used.insert(key).second) continue;
            doc.terms.push_back(term);
        }
        std::sort(doc.terms.begin(), doc.terms.end(), [](const SeriesTerm& l, const SeriesTerm& r) {
            int ly = l.y_exp.value_or(0), ry = r.y_exp.value_or(0);
            return std::tie(l.t_num, l.x_exp, ly) < std::tie(r.t_num, r.x_exp, ry);
        });
        return doc;
    }
};

}  // namespace

TEST_CASE("JSON round-trip is lossless for randomized documents") {
    Gen gen;
    for (int iter = 0; iter < 400; ++iter) {
        SeriesDocument doc = gen.document(iter % 2 == 0);
        std::string bytes = series_to_json(doc);
        SeriesDocument back = series_from_json(bytes);
        CHECK(back == doc);
        // Serialization is deterministic byte for byte.
        CHECK(series_to_json(back) == bytes);
    }
}

TEST_CASE("CSV round-trip is lossless for randomized documents") {
    Gen gen;
    for (int iter = 0; iter < 400; ++iter) {
        SeriesDocument doc = gen.document(iter % 3 == 0);
        std::string bytes = series_to_csv(doc);
        SeriesDocument back = series_from_csv(bytes);
        CHECK(back == doc);
        CHECK(series_to_csv(back) == bytes);
    }
}

TEST_CASE("builder documents round-trip through both formats") {
    Model model = make_model(ModelKind::ReverseKreweras, Weights{rat(2), rat(3), rat(5)});
    WalkTable table(model, 8);

    SUBCASE("single-variable series") {
        for (Selector sel : {Selector::point(0, 0), Selector::line_y(0), Selector::line_x(1),
                             Selector::diag(0), Selector::diag(-1)}) {
            SeriesDocument doc =
                document_from_series(model, table.series(sel), selector_variables(sel));
            CHECK(series_from_json(series_to_json(doc)) == doc);
            CHECK(series_from_csv(series_to_csv(doc)) == doc);
        }
    }

    SUBCASE("full two-variable series") {
        std::vector<XYPoly> layers;
        for (int n = 0; n <= 8; ++n) layers.push_back(table.layer(n));
        SeriesDocument doc =
            document_from_layers(model, layers, 8, selector_variables(Selector::full()));
        CHECK(doc.ramification == 1);
        CHECK(doc.accurate_order == 8);
        for (size_t k = 0; k < doc.terms.size(); ++k) CHECK(doc.terms[k].y_exp.has_value());
        CHECK(series_from_json(series_to_json(doc)) == doc);
    }
}

TEST_CASE("documented boundary coefficients appear in the serialized document") {
    // Reverse model, weights (2, 3, 5): the length-1 layer is a*x + b*y.
    Model model = make_model(ModelKind::ReverseKreweras, Weights{rat(2), rat(3), rat(5)});
    WalkTable table(model, 4);
    std::vector<XYPoly> layers;
    for (int n = 0; n <= 4; ++n) layers.push_back(table.layer(n));
    SeriesDocument doc = document_from_layers(model, layers, 4, "full series");

    bool saw_ax = false, saw_by = false;
    for (const SeriesTerm& term : doc.terms) {
        if (term.t_num != 1) continue;
        REQUIRE(term.y_exp.has_value());
        if (term.x_exp == 1 && *term.y_exp == 0) {
            CHECK(to_string(term.coeff) == "2");
            saw_ax = true;
        }
        if (term.x_exp == 0 && *term.y_exp == 1) {
            CHECK(to_string(term.coeff) == "3");
            saw_by = true;
        }
    }
    CHECK(saw_ax);
    CHECK(saw_by);

    // Terms are sorted by (t_num, x_exp, y_exp) and coefficients canonical.
    for (size_t k = 1; k < doc.terms.size(); ++k) {
        const SeriesTerm& l = doc.terms[k - 1];
        const SeriesTerm& r = doc.terms[k];
        CHECK(std::tie(l.t_num, l.x_exp, *l.y_exp) < std::tie(r.t_num, r.x_exp, *r.y_exp));
    }
}

TEST_CASE("zero series make a valid empty-terms document") {
    Model model = make_model(ModelKind::Kreweras, Weights{rat(1), rat(1), rat(1)});
    WalkTable table(model, 6);
    // Direct-model walks cannot reach (0, 1) in one step but the selector is
    // legal; the document simply carries whatever terms exist.
    SeriesDocument doc =
        document_from_series(model, table.series(Selector::point(5, 0)), "scalar test");
    CHECK(series_from_json(series_to_json(doc)) == doc);
    CHECK(series_from_csv(series_to_csv(doc)) == doc);
}

TEST_CASE("malformed JSON raises located errors") {
    auto code_of = [](const std::string& bytes) -> std::optional<ErrorCode> {
        try {
            series_from_json(bytes);
            return std::nullopt;
        } catch (const Error& e) {
            return e.code();
        }
    };

    CHECK(code_of("this is not json") == ErrorCode::MalformedDocument);
    CHECK(code_of("{}") == ErrorCode::MalformedDocument);
    CHECK(code_of(R"({"model":"nonsense","a":"1","b":"1","c":"1","ramification":1,)"
                  R"("variables":"v","accurate_order":3,"terms":[]})") ==
          ErrorCode::MalformedDocument);
    CHECK(code_of(R"({"model":"kreweras","a":"1","b":"1","c":"1","ramification":0,)"
                  R"("variables":"v","accurate_order":3,"terms":[]})") ==
          ErrorCode::MalformedDocument);
    CHECK(code_of(R"({"model":"kreweras","a":"1","b":"1","c":"1","ramification":1,)"
                  R"("variables":"v","accurate_order":3,"terms":[{"t_num":1,"x_exp":0}]})") ==
          ErrorCode::MalformedDocument);
    CHECK(code_of(R"({"model":"kreweras","a":"1","b":"1","c":"1","ramification":1,)"
                  R"("variables":"v","accurate_order":3,)"
                  R"("terms":[{"t_num":1,"x_exp":0,"coeff":"1.5"}]})") ==
          ErrorCode::MalformedDocument);

    // The error message names the offending location.
    try {
        series_from_json(R"({"model":"kreweras","a":"1","b":"1","c":"1","ramification":1,)"
                         R"("variables":"v","accurate_order":3,)"
                         R"("terms":[{"t_num":1,"x_exp":0,"coeff":"bad"}]})");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("terms[0]") != std::string::npos);
    }
}

TEST_CASE("malformed CSV raises errors naming the line") {
    auto code_of = [](const std::string& bytes) -> std::optional<ErrorCode> {
        try {
            series_from_csv(bytes);
            return std::nullopt;
        } catch (const Error& e) {
            return e.code();
        }
    };

    CHECK(code_of("") == ErrorCode::MalformedDocument);
    CHECK(code_of("t_num,x_exp,y_exp,coeff\n1,0,0,1\n") == ErrorCode::MalformedDocument);

    std::string good = "# model=kreweras\n# a=1\n# b=1\n# c=1\n# ramification=1\n"
                       "# accurate_order=3\n# variables=v\n"
                       "t_num,x_exp,y_exp,coeff\n";
    CHECK(!code_of(good).has_value());
    CHECK(code_of(good + "1,0,0\n") == ErrorCode::MalformedDocument);
    CHECK(code_of(good + "one,0,0,1\n") == ErrorCode::MalformedDocument);
    CHECK(code_of(good + "1,0,0,1/0\n") == ErrorCode::MalformedDocument);

    try {
        series_from_csv(good + "1,0,0,1\nbroken line\n");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 10") != std::string::npos);
    }
}

TEST_CASE("rational strings are canonicalized on output") {
    SeriesDocument doc;
    doc.model = "kreweras";
    doc.a = "2/4";  // not lowest terms on input
    doc.b = "4/6";
    doc.c = "5";
    doc.ramification = 1;
    doc.variables = "v";
    doc.accurate_order = 2;
    SeriesTerm term;
    term.t_num = 1;
    term.x_exp = 0;
    term.coeff = rat(6, 4);
    doc.terms.push_back(term);

    std::string bytes = series_to_json(doc);
    CHECK(bytes.find("\"a\": \"1/2\"") != std::string::npos);
    CHECK(bytes.find("\"b\": \"2/3\"") != std::string::npos);
    CHECK(bytes.find("\"c\": \"5\"") != std::string::npos);
    CHECK(bytes.find("\"coeff\": \"3/2\"") != std::string::npos);
    bool no_float_literals =
        bytes.find("e-") == std::string::npos && bytes.find("0.") == std::string::npos;
    CHECK(no_float_literals);
}

TEST_CASE("verification report structure and outcome") {
    VerifyReport report =
        build_verify_report(ModelKind::ReverseKreweras, Weights{rat(2), rat(3), rat(5)}, 8);
    CHECK(report.pass());
    CHECK(report.model == "reverse-kreweras");
    CHECK(report.order == 8);
    CHECK(report.working_order >= 16);
    REQUIRE(!report.rows.empty());

    bool saw_origin = false, saw_x_axis = false, saw_y_axis = false, saw_diag = false,
         saw_full = false;
    for (const VerifyRow& row : report.rows) {
        CHECK(row.first_mismatch == "none");
        CHECK(row.orders_checked == 8);
        if (row.quantity.find("point(0, 0)") != std::string::npos ||
            row.quantity.find("point(0,0)") != std::string::npos)
            saw_origin = true;
        if (row.quantity.find("line_y(0)") != std::string::npos) saw_x_axis = true;
        if (row.quantity.find("line_x(0)") != std::string::npos) saw_y_axis = true;
        if (row.quantity.find("diag(0)") != std::string::npos) saw_diag = true;
        if (row.quantity.find("full") != std::string::npos) saw_full = true;
    }
    CHECK(saw_origin);
    CHECK(saw_x_axis);
    CHECK(saw_y_axis);
    CHECK(saw_diag);
    CHECK(saw_full);

    std::string json = report_to_json(report);
    CHECK(json.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(json.find("runtime") == std::string::npos);  // determinism: no wall time
}

TEST_CASE("selector variable statements are stable and informative") {
    CHECK(selector_variables(Selector::full()).find("t marks walk length") != std::string::npos);
    CHECK(selector_variables(Selector::line_y(0)) != selector_variables(Selector::line_x(0)));
    CHECK(selector_variables(Selector::diag(2)) == selector_variables(Selector::diag(2)));
}
