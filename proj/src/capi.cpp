#include "qwalk/qwalk.h"

#include <charconv>
#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "errors.hpp"
#include "model.hpp"
#include "pipeline.hpp"
#include "serialize.hpp"
#include "walk_oracle.hpp"

struct qwalk_result {
    std::string bytes;
    int verify_passed = -1;
    double runtime_seconds = 0.0;
};

namespace {

thread_local std::string g_last_error;

int status_from(qwalk::ErrorCode code) {
    using qwalk::ErrorCode;
    switch (code) {
        case ErrorCode::NonMonomialLeadingTerm: return QWALK_ERR_NON_MONOMIAL_LEADING_TERM;
        case ErrorCode::NonSquareLeadingTerm: return QWALK_ERR_NON_SQUARE_LEADING_TERM;
        case ErrorCode::IndistinctLeadingTerms: return QWALK_ERR_INDISTINCT_LEADING_TERMS;
        case ErrorCode::NonRationalLeadingCoefficient:
            return QWALK_ERR_NON_RATIONAL_LEADING_COEFFICIENT;
        case ErrorCode::PrecisionExhausted: return QWALK_ERR_PRECISION_EXHAUSTED;
        case ErrorCode::SelectorOutOfRange: return QWALK_ERR_SELECTOR_OUT_OF_RANGE;
        case ErrorCode::UnboundedSupport: return QWALK_ERR_UNBOUNDED_SUPPORT;
        case ErrorCode::NotEliminable: return QWALK_ERR_NOT_ELIMINABLE;
        case ErrorCode::KernelNotCancelled: return QWALK_ERR_KERNEL_NOT_CANCELLED;
        case ErrorCode::SingularSystem: return QWALK_ERR_SINGULAR_SYSTEM;
        case ErrorCode::NullvectorCheckFailed: return QWALK_ERR_NULLVECTOR_CHECK_FAILED;
        case ErrorCode::UnknownSetMismatch: return QWALK_ERR_UNKNOWN_SET_MISMATCH;
        case ErrorCode::UnknownModel: return QWALK_ERR_UNKNOWN_MODEL;
        case ErrorCode::DegenerateRegime: return QWALK_ERR_DEGENERATE_REGIME;
        case ErrorCode::AllSystemsSingular: return QWALK_ERR_ALL_SYSTEMS_SINGULAR;
        case ErrorCode::DivisibilityFailure: return QWALK_ERR_DIVISIBILITY_FAILURE;
        case ErrorCode::MalformedDocument: return QWALK_ERR_MALFORMED_DOCUMENT;
        case ErrorCode::UsageError: return QWALK_ERR_USAGE;
    }
    return QWALK_ERR_INTERNAL;
}

template <typename Fn>
int guarded(qwalk_result** out, Fn&& fn) {
    if (out == nullptr) {
        g_last_error = "null output handle";
        return QWALK_ERR_USAGE;
    }
    *out = nullptr;
    try {
        auto start = std::chrono::steady_clock::now();
        auto result = std::make_unique<qwalk_result>();
        fn(*result);
        result->runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        *out = result.release();
        g_last_error.clear();
        return QWALK_OK;
    } catch (const qwalk::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QWALK_ERR_INTERNAL;
    }
}

std::string value_or(const char* s, const char* fallback) {
    return s == nullptr ? std::string(fallback) : std::string(s);
}

qwalk::ModelKind parse_model_arg(const char* model) {
    if (model == nullptr)
        qwalk::raise(qwalk::ErrorCode::UsageError, "model name is required");
    return qwalk::parse_model_kind(model);
}

qwalk::Rational parse_weight_arg(const char* value, const char* name) {
    std::string s = value_or(value, "1");
    qwalk::Rational w;
    try {
        w = qwalk::parse_rational(s);
    } catch (const qwalk::Error& e) {
        qwalk::raise(qwalk::ErrorCode::UsageError,
                     std::string("weight ") + name + ": " + e.what());
    }
    if (!(w > 0))
        qwalk::raise(qwalk::ErrorCode::UsageError,
                     std::string("weight ") + name + " must be positive, got " + s);
    return w;
}

qwalk::Weights parse_weights(const char* a, const char* b, const char* c) {
    qwalk::Weights w;
    w.a = parse_weight_arg(a, "a");
    w.b = parse_weight_arg(b, "b");
    w.c = parse_weight_arg(c, "c");
    return w;
}

void check_order(int order) {
    if (order < 0)
        qwalk::raise(qwalk::ErrorCode::UsageError,
                     "order must be >= 0, got " + std::to_string(order));
}

std::optional<int> working_opt(int working_order) {
    if (working_order < 0) return std::nullopt;
    return working_order;
}

std::optional<int> parse_int_token(const std::string& s) {
    if (s.empty()) return std::nullopt;
    int value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

qwalk::Selector parse_selector(const std::string& s) {
    using qwalk::Selector;
    auto bad = [&]() -> Selector {
        qwalk::raise(qwalk::ErrorCode::UsageError,
                     "bad selector '" + s +
                         "': expected full, line_y(i), line_x(i), diag(j), or point(i,j)");
    };
    if (s == "full") return Selector::full();
    auto open = s.find('(');
    if (open == std::string::npos || s.empty() || s.back() != ')') return bad();
    std::string head = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    if (head == "point") {
        auto comma = args.find(',');
        if (comma == std::string::npos) return bad();
        auto i = parse_int_token(args.substr(0, comma));
        auto j = parse_int_token(args.substr(comma + 1));
        if (!i || !j) return bad();
        return Selector::point(*i, *j);
    }
    auto idx = parse_int_token(args);
    if (!idx) return bad();
    if (head == "line_y") return Selector::line_y(*idx);
    if (head == "line_x") return Selector::line_x(*idx);
    if (head == "diag") return Selector::diag(*idx);
    return bad();
}

}  // namespace

extern "C" {

const char* qwalk_status_name(int status) {
    switch (status) {
        case QWALK_OK: return "ok";
        case QWALK_ERR_NON_MONOMIAL_LEADING_TERM: return "NonMonomialLeadingTerm";
        case QWALK_ERR_NON_SQUARE_LEADING_TERM: return "NonSquareLeadingTerm";
        case QWALK_ERR_INDISTINCT_LEADING_TERMS: return "IndistinctLeadingTerms";
        case QWALK_ERR_NON_RATIONAL_LEADING_COEFFICIENT:
            return "NonRationalLeadingCoefficient";
        case QWALK_ERR_PRECISION_EXHAUSTED: return "PrecisionExhausted";
        case QWALK_ERR_SELECTOR_OUT_OF_RANGE: return "SelectorOutOfRange";
        case QWALK_ERR_UNBOUNDED_SUPPORT: return "UnboundedSupport";
        case QWALK_ERR_NOT_ELIMINABLE: return "NotEliminable";
        case QWALK_ERR_KERNEL_NOT_CANCELLED: return "KernelNotCancelled";
        case QWALK_ERR_SINGULAR_SYSTEM: return "SingularSystem";
        case QWALK_ERR_NULLVECTOR_CHECK_FAILED: return "NullvectorCheckFailed";
        case QWALK_ERR_UNKNOWN_SET_MISMATCH: return "UnknownSetMismatch";
        case QWALK_ERR_UNKNOWN_MODEL: return "UnknownModel";
        case QWALK_ERR_DEGENERATE_REGIME: return "DegenerateRegime";
        case QWALK_ERR_ALL_SYSTEMS_SINGULAR: return "AllSystemsSingular";
        case QWALK_ERR_DIVISIBILITY_FAILURE: return "DivisibilityFailure";
        case QWALK_ERR_MALFORMED_DOCUMENT: return "MalformedDocument";
        case QWALK_ERR_USAGE: return "UsageError";
        case QWALK_ERR_INTERNAL: return "InternalError";
    }
    return "UnknownStatus";
}

const char* qwalk_last_error_message(void) { return g_last_error.c_str(); }

int qwalk_enumerate(const char* model, const char* a, const char* b, const char* c,
                    int order, const char* selector, const char* format,
                    qwalk_result** out) {
    return guarded(out, [&](qwalk_result& result) {
        qwalk::ModelKind kind = parse_model_arg(model);
        qwalk::Weights w = parse_weights(a, b, c);
        check_order(order);
        std::string fmt = value_or(format, "json");
        if (fmt != "json" && fmt != "csv")
            qwalk::raise(qwalk::ErrorCode::UsageError,
                         "format must be json or csv, got '" + fmt + "'");
        qwalk::Selector sel = parse_selector(value_or(selector, "full"));
        qwalk::Model m = qwalk::make_model(kind, w);
        qwalk::WalkTable table(m, order);
        qwalk::SeriesDocument doc;
        if (sel.kind == qwalk::Selector::Kind::Full) {
            std::vector<qwalk::XYPoly> layers;
            layers.reserve(order + 1);
            for (int n = 0; n <= order; ++n) layers.push_back(table.layer(n));
            doc = qwalk::document_from_layers(m, layers, order,
                                              qwalk::selector_variables(sel));
        } else {
            doc = qwalk::document_from_series(m, table.series(sel),
                                              qwalk::selector_variables(sel));
        }
        result.bytes = fmt == "csv" ? qwalk::series_to_csv(doc) : qwalk::series_to_json(doc);
    });
}

int qwalk_solve(const char* model, const char* a, const char* b, const char* c,
                int order, int working_order, qwalk_result** out) {
    return guarded(out, [&](qwalk_result& result) {
        qwalk::ModelKind kind = parse_model_arg(model);
        qwalk::Weights w = parse_weights(a, b, c);
        check_order(order);
        qwalk::Model m = qwalk::make_model(kind, w);
        qwalk::Solution sol = qwalk::solve_model(m, order, working_opt(working_order));
        result.bytes = qwalk::solution_to_json(sol);
    });
}

int qwalk_verify(const char* model, const char* a, const char* b, const char* c,
                 int order, int working_order, qwalk_result** out) {
    return guarded(out, [&](qwalk_result& result) {
        qwalk::ModelKind kind = parse_model_arg(model);
        qwalk::Weights w = parse_weights(a, b, c);
        check_order(order);
        qwalk::VerifyReport report =
            qwalk::build_verify_report(kind, w, order, working_opt(working_order));
        result.bytes = qwalk::report_to_json(report);
        result.verify_passed = report.pass() ? 1 : 0;
    });
}

int qwalk_expand(const char* model, const char* a, const char* b, const char* c,
                 int order, int working_order, const char* what, qwalk_result** out) {
    return guarded(out, [&](qwalk_result& result) {
        qwalk::ModelKind kind = parse_model_arg(model);
        qwalk::Weights w = parse_weights(a, b, c);
        check_order(order);
        qwalk::Model m = qwalk::make_model(kind, w);
        std::string name = value_or(what, "");
        if (name == "delta-roots") {
            result.bytes = qwalk::delta_roots_to_json(m, order);
        } else if (name == "factorization") {
            result.bytes = qwalk::factorization_to_json(m, order);
        } else if (name == "kernel-roots") {
            result.bytes = qwalk::kernel_roots_to_json(m, order);
        } else if (name == "determinants") {
            result.bytes = qwalk::determinants_to_json(m, order, working_opt(working_order));
        } else {
            qwalk::raise(qwalk::ErrorCode::UsageError,
                         "unknown expansion '" + name +
                             "': expected delta-roots, factorization, kernel-roots, or "
                             "determinants");
        }
    });
}

int qwalk_write_output(const char* path, const char* bytes, size_t size) {
    try {
        std::string target = value_or(path, "-");
        qwalk::write_output(target, std::string(bytes == nullptr ? "" : bytes,
                                                bytes == nullptr ? 0 : size));
        g_last_error.clear();
        return QWALK_OK;
    } catch (const qwalk::Error& e) {
        g_last_error = e.what();
        return status_from(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QWALK_ERR_INTERNAL;
    }
}

const char* qwalk_result_bytes(const qwalk_result* result) {
    return result == nullptr ? "" : result->bytes.c_str();
}

size_t qwalk_result_size(const qwalk_result* result) {
    return result == nullptr ? 0 : result->bytes.size();
}

int qwalk_result_verify_passed(const qwalk_result* result) {
    return result == nullptr ? -1 : result->verify_passed;
}

double qwalk_result_runtime_seconds(const qwalk_result* result) {
    return result == nullptr ? 0.0 : result->runtime_seconds;
}

void qwalk_result_free(qwalk_result* result) { delete result; }

}  // extern "C"
