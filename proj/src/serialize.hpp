// Exact serialization of series, solutions, and verification reports.
//
// JSON is the primary format (field order fixed, rationals as "p/q" strings,
// never floats); CSV is available for single-series documents. Series
// documents round-trip losslessly through both formats.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pipeline.hpp"
#include "puiseux.hpp"
#include "walk_oracle.hpp"
#include "xypoly.hpp"

namespace qwalk {

// One coefficient record: coeff * t^(t_num/ramification) * x^x_exp * y^y_exp.
struct SeriesTerm {
    int t_num = 0;
    int x_exp = 0;
    std::optional<int> y_exp;  // absent for x-only series
    Rational coeff;
};

struct SeriesDocument {
    std::string model;
    std::string a = "1", b = "1", c = "1";  // weights as exact "p/q" strings
    int ramification = 1;
    std::string variables;  // what t, x (and y) mark in this series
    int accurate_order = 0;  // in t_num units: every t_num <= this is exact
    std::vector<SeriesTerm> terms;  // sorted by (t_num, x_exp, y_exp)

    bool operator==(const SeriesDocument& other) const;
};

// Builders. Series terms beyond the accurate order are never emitted.
SeriesDocument document_from_series(const Model& model, const PuiseuxSeries& s,
                                    const std::string& variables);
SeriesDocument document_from_layers(const Model& model, const std::vector<XYPoly>& layers,
                                    int accurate_order, const std::string& variables);

std::string series_to_json(const SeriesDocument& doc);
SeriesDocument series_from_json(const std::string& bytes);
std::string series_to_csv(const SeriesDocument& doc);
SeriesDocument series_from_csv(const std::string& bytes);

// One row of a verification report.
struct VerifyRow {
    std::string quantity;
    int orders_checked = 0;
    std::string first_mismatch = "none";
};

struct VerifyReport {
    std::string model;
    std::string a = "1", b = "1", c = "1";
    int order = 0;
    int working_order = 0;
    std::vector<VerifyRow> rows;
    std::vector<DeterminantDiagnostic> determinants;
    std::vector<int> chosen_labels;
    std::string notes;
    // Wall-clock time; reported on stderr only so that identical invocations
    // produce byte-identical documents.
    double runtime_seconds = 0.0;

    bool pass() const;
};

std::string report_to_json(const VerifyReport& report);

// Solves the model and compares every solved quantity against the brute-force
// enumeration oracle, coefficient for coefficient through t^order.
VerifyReport build_verify_report(ModelKind kind, const Weights& w, int order,
                                 std::optional<int> working_order = std::nullopt);

// Human-readable statement of what t, x (and y) mark in the series selected
// by `sel`; stored in the document's `variables` field.
std::string selector_variables(const Selector& sel);

// JSON documents for the named intermediate objects of the solving pipeline.
std::string delta_roots_to_json(const Model& model, int order);
std::string factorization_to_json(const Model& model, int order);
std::string kernel_roots_to_json(const Model& model, int order);
std::string determinants_to_json(const Model& model, int order,
                                 std::optional<int> working_order = std::nullopt);

// The full solution as one JSON document bundling series documents for the
// origin, corner, section, and full series plus the solver diagnostics.
std::string solution_to_json(const Solution& sol);

// Writes bytes to `path` atomically (temp file + rename); "-" writes to
// standard output.
void write_output(const std::string& path, const std::string& bytes);

}  // namespace qwalk
