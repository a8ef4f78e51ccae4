#include "extraction.hpp"

#include <optional>
#include <stdexcept>

#include "errors.hpp"

namespace qwalk {
namespace {

enum class Arg { X, Y, XYbar };

Arg classify(const MonomialImage& m) {
    if (m.x_exp == 1 && m.y_exp == 0) return Arg::X;
    if (m.x_exp == 0 && m.y_exp == 1) return Arg::Y;
    if (m.x_exp == -1 && m.y_exp == -1) return Arg::XYbar;
    throw std::logic_error("orbit argument is not one of x, y, 1/(xy)");
}

struct Slot {
    UnknownTag tag;
    int x_shift;
};

// [y^m] Q(g) as a tagged unknown with an x-power prefactor, when nonzero.
std::optional<Slot> orbit_slot(int g, int m) {
    switch (g) {
        case 0: return m >= 0 ? std::optional<Slot>({UnknownTag::line_y(m), 0}) : std::nullopt;
        case 1: return Slot{UnknownTag::diag(m), 0};
        case 2: return Slot{UnknownTag::diag(-m), m};
        case 3: return m >= 0 ? std::optional<Slot>({UnknownTag::line_x(m), 0}) : std::nullopt;
        case 4: return m <= 0 ? std::optional<Slot>({UnknownTag::line_x(-m), m}) : std::nullopt;
        case 5: return m <= 0 ? std::optional<Slot>({UnknownTag::line_y(-m), m}) : std::nullopt;
        default: throw std::logic_error("orbit index out of range");
    }
}

PuiseuxSeries shifted_by_x(const PuiseuxSeries& s, int shift) {
    if (shift == 0) return s;
    return s * PuiseuxSeries::monomial(Rational(1), shift, 0, 1);
}

// Exact inverse of a single-term series. The reductions below subtract each
// relation divided by its pivot, so they preserve the value of the form being
// reduced; this keeps cancellations between different eliminations intact
// (a cross-multiplied variant rescales the form per step and breaks them).
std::optional<PuiseuxSeries> monomial_inverse(const PuiseuxSeries& s) {
    const PuiseuxSeries n = s.ram_normalized();
    if (!n.is_exact() || n.terms().size() != 1) return std::nullopt;
    const auto& [key, poly] = *n.terms().begin();
    if (poly.terms().size() != 1) return std::nullopt;
    const auto& [eps, q] = *poly.terms().begin();
    if (is_zero(q)) return std::nullopt;
    return PuiseuxSeries::monomial(Rational(1) / q, -eps, -key, n.ram());
}

// form - rel * (form.coeff(target) / pivot): removes `target` from `form`
// without changing its value as a relation combination.
LinearForm eliminate_normalized(LinearForm form, const LinearForm& rel, const UnknownTag& target,
                                const char* what) {
    auto inv = monomial_inverse(rel.coeff(target));
    if (!inv)
        raise(ErrorCode::NotEliminable,
              std::string(what) + " pivot for " + target.str() + " is not a single term");
    form = form - rel.scaled(*inv * form.coeff(target));
    if (form.has(target) && !form.coeff(target).is_zero_value())
        raise(ErrorCode::NotEliminable,
              std::string(what) + " left a residue in " + target.str());
    return form;
}

}  // namespace

LinearForm y_slice_of_orbit_term(const Model& model, const TriPoly& coeff, int g, int k) {
    (void)model;
    LinearForm out;
    for (int mu = coeff.min_y_exp(); mu <= coeff.max_y_exp(); ++mu) {
        PuiseuxSeries c = coeff.y_slice(mu);
        if (c.is_zero_value()) continue;
        auto slot = orbit_slot(g, k - mu);
        if (!slot) continue;
        out.add_term(slot->tag, shifted_by_x(c, slot->x_shift));
    }
    return out;
}

LinearForm y_slice_of_x_axis_term(const Model& model, const TriPoly& coeff, int g, int k) {
    LinearForm out;
    Arg u = classify(model.orbit[g].x);
    for (int mu = coeff.min_y_exp(); mu <= coeff.max_y_exp(); ++mu) {
        PuiseuxSeries c = coeff.y_slice(mu);
        if (c.is_zero_value()) continue;
        int m = k - mu;
        switch (u) {
            case Arg::X:
                if (m == 0) out.add_term(UnknownTag::line_y(0), c);
                break;
            case Arg::Y:
                if (m >= 0) out.add_term(UnknownTag::point(m, 0), c);
                break;
            case Arg::XYbar:
                if (m <= 0) out.add_term(UnknownTag::point(-m, 0), shifted_by_x(c, m));
                break;
        }
    }
    return out;
}

LinearForm y_slice_of_y_axis_term(const Model& model, const TriPoly& coeff, int g, int k) {
    LinearForm out;
    Arg v = classify(model.orbit[g].y);
    for (int mu = coeff.min_y_exp(); mu <= coeff.max_y_exp(); ++mu) {
        PuiseuxSeries c = coeff.y_slice(mu);
        if (c.is_zero_value()) continue;
        int m = k - mu;
        switch (v) {
            case Arg::X:
                if (m == 0) out.add_term(UnknownTag::line_x(0), c);
                break;
            case Arg::Y:
                if (m >= 0) out.add_term(UnknownTag::point(0, m), c);
                break;
            case Arg::XYbar:
                if (m <= 0) out.add_term(UnknownTag::point(0, -m), shifted_by_x(c, m));
                break;
        }
    }
    return out;
}

LinearForm functional_row_slice(const Model& model, int g, int k) {
    TriPoly kernel_at_g = model.kernel.substituted(model.orbit[g]);
    LinearForm form = y_slice_of_orbit_term(model, kernel_at_g, g, k);
    form = form - y_slice_of_x_axis_term(model, model.a_weight_at(g), g, k);
    form = form - y_slice_of_y_axis_term(model, model.b_weight_at(g), g, k);
    PuiseuxSeries ow = model.origin_weight_at(g).y_slice(k);
    form.add_term(UnknownTag::point(0, 0), -ow);
    if (k == 0) form.add_known(PuiseuxSeries::constant(Rational(-1) / model.w.c));
    return form;
}

LinearForm point_relation(const Model& model, int p, int q) {
    return x_slice(functional_row_slice(model, 0, q), p);
}

PointPredicate canonical_points(const Model& model) {
    if (model.kind == ModelKind::ReverseKreweras)
        return [](const UnknownTag& t) { return t.i == 0 || t.j == 0; };
    return [](const UnknownTag& t) { return t.j == 0; };
}

LinearForm reduce_points(const Model& model, LinearForm form, const PointPredicate& canon) {
    for (int guard = 0; guard < 10000; ++guard) {
        std::optional<UnknownTag> target;
        for (const auto& [tag, c] : form.terms()) {
            if (tag.kind != UnknownTag::Kind::Point || canon(tag)) continue;
            // Reduce the farthest point first so each relation only brings in
            // nearer ones.
            if (!target || tag.i + tag.j > target->i + target->j) target = tag;
        }
        if (!target) return form;
        LinearForm rel;
        if (model.kind == ModelKind::ReverseKreweras) {
            if (target->i < 1 || target->j < 1)
                raise(ErrorCode::UnknownSetMismatch,
                      "no reduction rule for point " + target->str());
            rel = point_relation(model, target->i - 1, target->j - 1);
        } else {
            if (target->j < 1)
                raise(ErrorCode::UnknownSetMismatch,
                      "no reduction rule for point " + target->str());
            rel = point_relation(model, target->i, target->j - 1);
        }
        if (!rel.has(*target))
            throw std::logic_error("point relation does not mention its target");
        form = eliminate_normalized(std::move(form), rel, *target, "point reduction");
    }
    throw std::logic_error("point reduction did not terminate");
}

LinearForm reduce_to_sections(const Model& model, LinearForm form,
                              const std::set<UnknownTag>& wanted,
                              const PointPredicate& canon) {
    for (int guard = 0; guard < 10000; ++guard) {
        std::optional<UnknownTag> target;
        auto better = [&](const UnknownTag& t) {
            if (!target) return true;
            return std::abs(t.i) > std::abs(target->i);
        };
        for (const auto& [tag, c] : form.terms()) {
            if (!tag.is_function() || wanted.count(tag)) continue;
            if (better(tag)) target = tag;
        }
        if (!target) break;
        int k = target->i;
        LinearForm rel;
        switch (target->kind) {
            case UnknownTag::Kind::LineY:
                rel = functional_row_slice(model, 0, k - 1);
                break;
            case UnknownTag::Kind::LineX:
                rel = functional_row_slice(model, 3, k - 1);
                break;
            case UnknownTag::Kind::Diag:
                if (k == 0 || k == 1)
                    raise(ErrorCode::UnknownSetMismatch,
                          "diagonal sections 0 and 1 must be part of the wanted set");
                rel = functional_row_slice(model, 1, k >= 2 ? k - 1 : k + 1);
                break;
            case UnknownTag::Kind::Point:
                throw std::logic_error("unexpected point tag");
        }
        if (!rel.has(*target))
            raise(ErrorCode::NotEliminable,
                  "section relation does not mention " + target->str());
        form = eliminate_normalized(std::move(form), rel, *target, "section reduction");
    }
    return reduce_points(model, std::move(form), canon);
}

}  // namespace qwalk
