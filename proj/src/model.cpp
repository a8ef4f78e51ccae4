#include "model.hpp"

#include "errors.hpp"

namespace qwalk {

ModelKind parse_model_kind(const std::string& name) {
    if (name == "kreweras") return ModelKind::Kreweras;
    if (name == "reverse-kreweras") return ModelKind::ReverseKreweras;
    raise(ErrorCode::UnknownModel, "unknown model '" + name + "'");
}

const char* model_kind_name(ModelKind kind) {
    return kind == ModelKind::Kreweras ? "kreweras" : "reverse-kreweras";
}

TriPoly Model::a_weight_at(int g) const {
    TriPoly out(XYPoly(Rational(w.a - 1) / w.a));
    out.add_term(1, -a_poly.substituted(orbit[g]));
    return out;
}

TriPoly Model::b_weight_at(int g) const {
    TriPoly out(XYPoly(Rational(w.b - 1) / w.b));
    out.add_term(1, -b_poly.substituted(orbit[g]));
    return out;
}

TriPoly Model::origin_weight_at(int g) const {
    TriPoly out{XYPoly(origin_const)};
    out.add_term(1, g_poly.substituted(orbit[g]));
    return out;
}

Model make_model(ModelKind kind, const Weights& w) {
    if (w.a <= 0 || w.b <= 0 || w.c <= 0)
        raise(ErrorCode::UsageError, "boundary weights must be positive rationals");
    Model m;
    m.kind = kind;
    m.w = w;
    if (kind == ModelKind::ReverseKreweras) {
        m.steps = {{1, 0}, {0, 1}, {-1, -1}};
        m.a_poly = XYPoly::monomial(Rational(1), -1, -1);
        m.b_poly = XYPoly::monomial(Rational(1), -1, -1);
        m.g_poly = XYPoly::monomial(Rational(1), -1, -1);
    } else {
        m.steps = {{1, 1}, {-1, 0}, {0, -1}};
        m.a_poly = XYPoly::monomial(Rational(1), 0, -1);
        m.b_poly = XYPoly::monomial(Rational(1), -1, 0);
        m.g_poly = XYPoly();
    }
    for (const auto& [dx, dy] : m.steps) m.step_poly.add_term(dx, dy, Rational(1));

    m.kernel = TriPoly(XYPoly(Rational(1)));
    m.kernel.add_term(1, -m.step_poly);

    m.origin_const =
        (w.a * w.c + w.b * w.c - w.a * w.b - w.a * w.b * w.c) / (w.a * w.b * w.c);

    m.sect_minus = m.step_poly.y_slice(-1);
    m.sect_zero = m.step_poly.y_slice(0);
    m.sect_plus = m.step_poly.y_slice(1);

    // Group generators: phi(x,y) = (1/(xy), y), psi(x,y) = (x, 1/(xy)).
    m.orbit[0] = {{1, 0}, {0, 1}};     // (x, y)
    m.orbit[1] = {{-1, -1}, {0, 1}};   // (1/(xy), y)
    m.orbit[2] = {{0, 1}, {-1, -1}};   // (y, 1/(xy))
    m.orbit[3] = {{0, 1}, {1, 0}};     // (y, x)
    m.orbit[4] = {{-1, -1}, {1, 0}};   // (1/(xy), x)
    m.orbit[5] = {{1, 0}, {-1, -1}};   // (x, 1/(xy))
    return m;
}

}  // namespace qwalk
