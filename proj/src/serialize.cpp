#include "serialize.hpp"

#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "errors.hpp"
#include "factorization.hpp"
#include "kernel_roots.hpp"

namespace qwalk {
namespace {

using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& where, const std::string& what) {
    raise(ErrorCode::MalformedDocument, where + ": " + what);
}

const OrderedJson& require_field(const OrderedJson& obj, const std::string& key,
                                 const std::string& where) {
    if (!obj.is_object()) malformed(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) malformed(where, "missing field '" + key + "'");
    return *it;
}

int require_int(const OrderedJson& obj, const std::string& key, const std::string& where) {
    const OrderedJson& v = require_field(obj, key, where);
    if (!v.is_number_integer()) malformed(where + "." + key, "expected an integer");
    return v.get<int>();
}

std::string require_string(const OrderedJson& obj, const std::string& key,
                           const std::string& where) {
    const OrderedJson& v = require_field(obj, key, where);
    if (!v.is_string()) malformed(where + "." + key, "expected a string");
    return v.get<std::string>();
}

// Validates and normalizes a rational string to lowest terms.
std::string canonical_rational(const std::string& s, const std::string& where) {
    try {
        return to_string(parse_rational(s));
    } catch (const Error& e) {
        malformed(where, e.what());
    }
}

Rational rational_value(const std::string& s, const std::string& where) {
    try {
        return parse_rational(s);
    } catch (const Error& e) {
        malformed(where, e.what());
    }
}

void check_model_name(const std::string& s, const std::string& where) {
    try {
        parse_model_kind(s);
    } catch (const Error& e) {
        malformed(where, e.what());
    }
}

int parse_int_field(const std::string& s, const std::string& where) {
    if (s.empty()) malformed(where, "expected an integer, got an empty field");
    int value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        malformed(where, "expected an integer, got '" + s + "'");
    return value;
}

OrderedJson document_json(const SeriesDocument& doc) {
    OrderedJson j = OrderedJson::object();
    j["model"] = doc.model;
    j["a"] = canonical_rational(doc.a, "a");
    j["b"] = canonical_rational(doc.b, "b");
    j["c"] = canonical_rational(doc.c, "c");
    j["ramification"] = doc.ramification;
    j["variables"] = doc.variables;
    j["accurate_order"] = doc.accurate_order;
    OrderedJson terms = OrderedJson::array();
    for (const SeriesTerm& t : doc.terms) {
        OrderedJson jt = OrderedJson::object();
        jt["t_num"] = t.t_num;
        jt["x_exp"] = t.x_exp;
        if (t.y_exp) jt["y_exp"] = *t.y_exp;
        jt["coeff"] = to_string(t.coeff);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

SeriesDocument document_from_json_value(const OrderedJson& j, const std::string& where) {
    SeriesDocument doc;
    doc.model = require_string(j, "model", where);
    check_model_name(doc.model, where + ".model");
    doc.a = canonical_rational(require_string(j, "a", where), where + ".a");
    doc.b = canonical_rational(require_string(j, "b", where), where + ".b");
    doc.c = canonical_rational(require_string(j, "c", where), where + ".c");
    doc.ramification = require_int(j, "ramification", where);
    if (doc.ramification < 1) malformed(where + ".ramification", "must be >= 1");
    doc.variables = require_string(j, "variables", where);
    doc.accurate_order = require_int(j, "accurate_order", where);
    const OrderedJson& terms = require_field(j, "terms", where);
    if (!terms.is_array()) malformed(where + ".terms", "expected an array");
    int index = 0;
    for (const OrderedJson& jt : terms) {
        std::string term_where = where + ".terms[" + std::to_string(index) + "]";
        SeriesTerm t;
        t.t_num = require_int(jt, "t_num", term_where);
        t.x_exp = require_int(jt, "x_exp", term_where);
        if (jt.is_object() && jt.contains("y_exp")) {
            const OrderedJson& y = jt.at("y_exp");
            if (!y.is_number_integer())
                malformed(term_where + ".y_exp", "expected an integer");
            t.y_exp = y.get<int>();
        }
        t.coeff = rational_value(require_string(jt, "coeff", term_where),
                                 term_where + ".coeff");
        doc.terms.push_back(std::move(t));
        ++index;
    }
    return doc;
}

OrderedJson parse_json_bytes(const std::string& bytes) {
    try {
        return OrderedJson::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorCode::MalformedDocument, std::string("json parse error: ") + e.what());
    }
}

OrderedJson determinant_json(const DeterminantDiagnostic& d) {
    OrderedJson jd = OrderedJson::object();
    jd["name"] = d.name;
    jd["labels"] = d.labels;
    jd["vanishes"] = d.vanishes;
    jd["leading_order"] = d.leading_order;
    jd["leading_coeff"] = to_string(d.leading_coeff);
    return jd;
}

// Locates the first coefficient where the two series disagree, or "none".
std::string first_series_mismatch(const PuiseuxSeries& got, const PuiseuxSeries& want,
                                  int order) {
    PuiseuxSeries g = got.ram_normalized();
    PuiseuxSeries w = want.ram_normalized();
    if (g.ram() != w.ram()) return "ramification mismatch";
    int ram = g.ram();
    for (int key = 0; key <= order * ram; ++key) {
        LaurentPoly d = g.coeff(key) - w.coeff(key);
        if (d.is_zero()) continue;
        std::string at = "t^" + std::to_string(key);
        if (ram != 1) at += "/" + std::to_string(ram);
        if (!(d.min_exp() == 0 && d.max_exp() == 0))
            at += " x^" + std::to_string(d.min_exp());
        return at;
    }
    return "none";
}

std::string first_layer_mismatch(const std::vector<XYPoly>& got, const WalkTable& table,
                                 int order) {
    for (int n = 0; n <= order; ++n) {
        if (n >= static_cast<int>(got.size()))
            return "t^" + std::to_string(n) + " (layer missing)";
        XYPoly diff = got[n] - table.layer(n);
        if (diff.terms().empty()) continue;
        auto [x_exp, y_exp] = diff.terms().begin()->first;
        return "t^" + std::to_string(n) + " x^" + std::to_string(x_exp) + " y^" +
               std::to_string(y_exp);
    }
    return "none";
}

std::string weights_suffix() { return "t marks walk length"; }

}  // namespace

bool SeriesDocument::operator==(const SeriesDocument& other) const {
    if (model != other.model || a != other.a || b != other.b || c != other.c ||
        ramification != other.ramification || variables != other.variables ||
        accurate_order != other.accurate_order || terms.size() != other.terms.size())
        return false;
    for (size_t i = 0; i < terms.size(); ++i) {
        const SeriesTerm& p = terms[i];
        const SeriesTerm& q = other.terms[i];
        if (p.t_num != q.t_num || p.x_exp != q.x_exp || p.y_exp != q.y_exp ||
            !(p.coeff == q.coeff))
            return false;
    }
    return true;
}

SeriesDocument document_from_series(const Model& model, const PuiseuxSeries& s,
                                    const std::string& variables) {
    SeriesDocument doc;
    doc.model = model_kind_name(model.kind);
    doc.a = to_string(model.w.a);
    doc.b = to_string(model.w.b);
    doc.c = to_string(model.w.c);
    doc.ramification = s.ram();
    doc.variables = variables;
    int acc = s.acc();
    if (acc == PuiseuxSeries::kExact)
        acc = s.terms().empty() ? 0 : s.terms().rbegin()->first;
    doc.accurate_order = acc;
    for (const auto& [key, poly] : s.terms()) {
        if (key > acc) continue;
        for (const auto& [x_exp, coeff] : poly.terms()) {
            SeriesTerm t;
            t.t_num = key;
            t.x_exp = x_exp;
            t.coeff = coeff;
            doc.terms.push_back(std::move(t));
        }
    }
    return doc;
}

SeriesDocument document_from_layers(const Model& model, const std::vector<XYPoly>& layers,
                                    int accurate_order, const std::string& variables) {
    SeriesDocument doc;
    doc.model = model_kind_name(model.kind);
    doc.a = to_string(model.w.a);
    doc.b = to_string(model.w.b);
    doc.c = to_string(model.w.c);
    doc.ramification = 1;
    doc.variables = variables;
    doc.accurate_order = accurate_order;
    int top = std::min<int>(static_cast<int>(layers.size()) - 1, accurate_order);
    for (int n = 0; n <= top; ++n) {
        for (const auto& [key, coeff] : layers[n].terms()) {
            if (is_zero(coeff)) continue;
            SeriesTerm t;
            t.t_num = n;
            t.x_exp = key.first;
            t.y_exp = key.second;
            t.coeff = coeff;
            doc.terms.push_back(std::move(t));
        }
    }
    return doc;
}

std::string series_to_json(const SeriesDocument& doc) {
    return document_json(doc).dump(2) + "\n";
}

SeriesDocument series_from_json(const std::string& bytes) {
    return document_from_json_value(parse_json_bytes(bytes), "document");
}

std::string series_to_csv(const SeriesDocument& doc) {
    std::ostringstream out;
    out << "# model=" << doc.model << "\n";
    out << "# a=" << canonical_rational(doc.a, "a") << "\n";
    out << "# b=" << canonical_rational(doc.b, "b") << "\n";
    out << "# c=" << canonical_rational(doc.c, "c") << "\n";
    out << "# ramification=" << doc.ramification << "\n";
    out << "# accurate_order=" << doc.accurate_order << "\n";
    out << "# variables=" << doc.variables << "\n";
    out << "t_num,x_exp,y_exp,coeff\n";
    for (const SeriesTerm& t : doc.terms) {
        out << t.t_num << "," << t.x_exp << ",";
        if (t.y_exp) out << *t.y_exp;
        out << "," << to_string(t.coeff) << "\n";
    }
    return out.str();
}

SeriesDocument series_from_csv(const std::string& bytes) {
    SeriesDocument doc;
    std::istringstream in(bytes);
    std::string line;
    int line_no = 0;
    bool seen_header = false;
    bool seen_model = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string where = "line " + std::to_string(line_no);
        if (line.rfind("# ", 0) == 0) {
            if (seen_header) malformed(where, "metadata after the header row");
            std::string kv = line.substr(2);
            auto eq = kv.find('=');
            if (eq == std::string::npos) malformed(where, "metadata line without '='");
            std::string key = kv.substr(0, eq);
            std::string value = kv.substr(eq + 1);
            if (key == "model") {
                check_model_name(value, where + " (model)");
                doc.model = value;
                seen_model = true;
            } else if (key == "a") {
                doc.a = canonical_rational(value, where + " (a)");
            } else if (key == "b") {
                doc.b = canonical_rational(value, where + " (b)");
            } else if (key == "c") {
                doc.c = canonical_rational(value, where + " (c)");
            } else if (key == "ramification") {
                doc.ramification = parse_int_field(value, where + " (ramification)");
                if (doc.ramification < 1) malformed(where + " (ramification)", "must be >= 1");
            } else if (key == "accurate_order") {
                doc.accurate_order = parse_int_field(value, where + " (accurate_order)");
            } else if (key == "variables") {
                doc.variables = value;
            } else {
                malformed(where, "unknown metadata key '" + key + "'");
            }
        } else if (!seen_header) {
            if (line != "t_num,x_exp,y_exp,coeff")
                malformed(where, "expected header 't_num,x_exp,y_exp,coeff'");
            seen_header = true;
        } else {
            std::vector<std::string> fields;
            std::string field;
            std::istringstream row(line);
            while (std::getline(row, field, ',')) fields.push_back(field);
            // A trailing empty field is invisible to getline; restore it.
            if (!line.empty() && line.back() == ',') fields.push_back("");
            if (fields.size() != 4)
                malformed(where, "expected 4 comma-separated fields, got " +
                                     std::to_string(fields.size()));
            SeriesTerm t;
            t.t_num = parse_int_field(fields[0], where + " (t_num)");
            t.x_exp = parse_int_field(fields[1], where + " (x_exp)");
            if (!fields[2].empty()) t.y_exp = parse_int_field(fields[2], where + " (y_exp)");
            t.coeff = rational_value(fields[3], where + " (coeff)");
            doc.terms.push_back(std::move(t));
        }
    }
    if (!seen_header) malformed("document", "missing header row 't_num,x_exp,y_exp,coeff'");
    if (!seen_model) malformed("document", "missing '# model=' metadata line");
    return doc;
}

bool VerifyReport::pass() const {
    for (const VerifyRow& row : rows)
        if (row.first_mismatch != "none") return false;
    return true;
}

std::string report_to_json(const VerifyReport& report) {
    OrderedJson j = OrderedJson::object();
    j["model"] = report.model;
    j["a"] = report.a;
    j["b"] = report.b;
    j["c"] = report.c;
    j["order"] = report.order;
    j["working_order"] = report.working_order;
    j["status"] = report.pass() ? "pass" : "fail";
    OrderedJson rows = OrderedJson::array();
    for (const VerifyRow& row : report.rows) {
        OrderedJson jr = OrderedJson::object();
        jr["quantity"] = row.quantity;
        jr["orders_checked"] = row.orders_checked;
        jr["first_mismatch"] = row.first_mismatch;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    OrderedJson dets = OrderedJson::array();
    for (const DeterminantDiagnostic& d : report.determinants)
        dets.push_back(determinant_json(d));
    j["determinants"] = std::move(dets);
    j["chosen_equations"] = report.chosen_labels;
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

std::string solution_to_json(const Solution& sol) {
    Model model = make_model(sol.kind, sol.w);
    OrderedJson j = OrderedJson::object();
    j["model"] = model_kind_name(sol.kind);
    j["a"] = to_string(sol.w.a);
    j["b"] = to_string(sol.w.b);
    j["c"] = to_string(sol.w.c);
    j["order"] = sol.order;
    j["working_order"] = sol.working_order;
    OrderedJson series = OrderedJson::object();
    bool corner_has_origin = false;
    for (const auto& [tag, value] : sol.corner)
        if (tag.i == 0 && tag.j == 0) corner_has_origin = true;
    if (!corner_has_origin)
        series["point_0_0"] = document_json(document_from_series(
            model, sol.q00.truncated_order(sol.order),
            selector_variables(Selector::point(0, 0))));
    for (const auto& [tag, value] : sol.corner) {
        std::string key = "point_" + std::to_string(tag.i) + "_" + std::to_string(tag.j);
        series[key] = document_json(document_from_series(
            model, value.truncated_order(sol.order),
            selector_variables(Selector::point(tag.i, tag.j))));
    }
    series["line_y_0"] = document_json(document_from_series(
        model, sol.qx0.truncated_order(sol.order), selector_variables(Selector::line_y(0))));
    series["line_x_0"] = document_json(document_from_series(
        model, sol.q0y.truncated_order(sol.order), selector_variables(Selector::line_x(0))));
    series["diag_0"] = document_json(document_from_series(
        model, sol.qd0.truncated_order(sol.order), selector_variables(Selector::diag(0))));
    if (!sol.qxy.empty())
        series["full"] = document_json(document_from_layers(
            model, sol.qxy, sol.order, selector_variables(Selector::full())));
    j["series"] = std::move(series);
    OrderedJson dets = OrderedJson::array();
    for (const DeterminantDiagnostic& d : sol.determinants)
        dets.push_back(determinant_json(d));
    j["determinants"] = std::move(dets);
    j["chosen_equations"] = sol.chosen_labels;
    j["notes"] = sol.notes;
    return j.dump(2) + "\n";
}

VerifyReport build_verify_report(ModelKind kind, const Weights& w, int order,
                                 std::optional<int> working_order) {
    Model model = make_model(kind, w);
    Solution sol = solve_model(model, order, working_order);
    WalkTable table(model, order);

    VerifyReport rep;
    rep.model = model_kind_name(kind);
    rep.a = to_string(w.a);
    rep.b = to_string(w.b);
    rep.c = to_string(w.c);
    rep.order = order;
    rep.working_order = sol.working_order;

    auto add_row = [&](const std::string& quantity, const PuiseuxSeries& got,
                       const Selector& sel) {
        VerifyRow row;
        row.quantity = quantity;
        row.orders_checked = order;
        row.first_mismatch = first_series_mismatch(got, table.series(sel), order);
        rep.rows.push_back(std::move(row));
    };

    bool corner_has_origin = false;
    for (const auto& [tag, value] : sol.corner)
        if (tag.i == 0 && tag.j == 0) corner_has_origin = true;
    if (!corner_has_origin) add_row("point(0,0)", sol.q00, Selector::point(0, 0));
    for (const auto& [tag, value] : sol.corner) {
        std::string name = "point(" + std::to_string(tag.i) + "," + std::to_string(tag.j) + ")";
        add_row(name, value, Selector::point(tag.i, tag.j));
    }
    add_row("line_y(0)", sol.qx0, Selector::line_y(0));
    add_row("line_x(0)", sol.q0y, Selector::line_x(0));
    add_row("diag(0)", sol.qd0, Selector::diag(0));
    {
        VerifyRow row;
        row.quantity = "full";
        row.orders_checked = order;
        row.first_mismatch = first_layer_mismatch(sol.qxy, table, order);
        rep.rows.push_back(std::move(row));
    }

    rep.determinants = sol.determinants;
    rep.chosen_labels = sol.chosen_labels;
    rep.notes = sol.notes;
    return rep;
}

std::string selector_variables(const Selector& sel) {
    switch (sel.kind) {
        case Selector::Kind::Full:
            return weights_suffix() + "; x and y mark the endpoint coordinates";
        case Selector::Kind::LineY:
            return weights_suffix() + "; x marks the endpoint x-coordinate on the line y=" +
                   std::to_string(sel.i);
        case Selector::Kind::LineX:
            return weights_suffix() + "; x marks the endpoint y-coordinate on the line x=" +
                   std::to_string(sel.i);
        case Selector::Kind::Diag:
            return weights_suffix() +
                   "; x marks the endpoint x-coordinate on the diagonal y=x+" +
                   std::to_string(sel.j);
        case Selector::Kind::Point:
            return weights_suffix() + "; endpoint fixed at (" + std::to_string(sel.i) + "," +
                   std::to_string(sel.j) + ")";
    }
    return weights_suffix();
}

namespace {

OrderedJson expand_header(const Model& model, int order, const std::string& what) {
    OrderedJson j = OrderedJson::object();
    j["model"] = model_kind_name(model.kind);
    j["a"] = to_string(model.w.a);
    j["b"] = to_string(model.w.b);
    j["c"] = to_string(model.w.c);
    j["order"] = order;
    j["what"] = what;
    return j;
}

}  // namespace

std::string delta_roots_to_json(const Model& model, int order) {
    KernelFactorization fact = factor_discriminant(model, order);
    OrderedJson j = expand_header(model, order, "delta-roots");
    OrderedJson series = OrderedJson::object();
    int index = 1;
    for (const PuiseuxSeries& root : fact.roots.finite) {
        series["X_" + std::to_string(index)] = document_json(document_from_series(
            model, root,
            "t marks walk length; vanishing branch of the kernel discriminant in x"));
        ++index;
    }
    for (const PuiseuxSeries& root : fact.roots.divergent) {
        series["X_" + std::to_string(index)] = document_json(document_from_series(
            model, root,
            "t marks walk length; divergent branch of the kernel discriminant in x"));
        ++index;
    }
    j["series"] = std::move(series);
    return j.dump(2) + "\n";
}

std::string factorization_to_json(const Model& model, int order) {
    KernelFactorization fact = factor_discriminant(model, order);
    OrderedJson j = expand_header(model, order, "factorization");
    OrderedJson series = OrderedJson::object();
    auto put = [&](const std::string& key, const PuiseuxSeries& s, const std::string& vars) {
        series[key] = document_json(
            document_from_series(model, s, weights_suffix() + "; " + vars));
    };
    put("delta", fact.delta, "kernel discriminant in x (exact)");
    put("delta_zero", fact.delta_zero, "x-free factor of the discriminant");
    put("delta_plus", fact.delta_plus, "divergent-branch factor of the discriminant");
    put("delta_minus", fact.delta_minus, "vanishing-branch factor of the discriminant");
    put("inv_sqrt_delta_plus", fact.inv_sqrt_plus,
        "reciprocal square root of the divergent-branch factor");
    put("sqrt_delta_zero_minus", fact.sqrt_zero_minus,
        "square root of the x-free and vanishing-branch factors");
    j["series"] = std::move(series);
    return j.dump(2) + "\n";
}

std::string kernel_roots_to_json(const Model& model, int order) {
    std::vector<KernelSlot> slots = kernel_root_slots(model, order);
    OrderedJson j = expand_header(model, order, "kernel-roots");
    OrderedJson arr = OrderedJson::array();
    for (const KernelSlot& slot : slots) {
        OrderedJson js = OrderedJson::object();
        js["label"] = slot.label;
        js["part"] = slot.flipped ? "flipped" : "nonnegative";
        if (slot.root) {
            js["root"] = document_json(document_from_series(
                model, *slot.root,
                weights_suffix() + "; admissible root of boundary kernel factor " +
                    std::to_string(slot.label)));
        } else {
            js["degenerate_reason"] = slot.degenerate_reason;
        }
        arr.push_back(std::move(js));
    }
    j["slots"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string determinants_to_json(const Model& model, int order,
                                 std::optional<int> working_order) {
    Solution sol = solve_model(model, order, working_order);
    OrderedJson j = expand_header(model, order, "determinants");
    j["working_order"] = sol.working_order;
    OrderedJson dets = OrderedJson::array();
    for (const DeterminantDiagnostic& d : sol.determinants)
        dets.push_back(determinant_json(d));
    j["determinants"] = std::move(dets);
    j["chosen_equations"] = sol.chosen_labels;
    j["notes"] = sol.notes;
    return j.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& bytes) {
    if (path.empty() || path == "-") {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        std::fflush(stdout);
        return;
    }
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp(path + ".tmp." + std::to_string(static_cast<long>(::getpid())));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::UsageError, "cannot open '" + tmp.string() + "' for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            raise(ErrorCode::UsageError, "failed while writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        raise(ErrorCode::UsageError,
              "cannot move output into place at '" + path + "': " + ec.message());
    }
}

}  // namespace qwalk
