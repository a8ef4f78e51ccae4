#include "walk_oracle.hpp"

#include "errors.hpp"

namespace qwalk {

namespace {
const Rational kZero(0);
}

WalkTable::WalkTable(const Model& model, int order) : model_(model), order_(order) {
    if (order < 0) raise(ErrorCode::SelectorOutOfRange, "negative enumeration order");
    int side = order + 1;
    counts_.assign(order + 1, std::vector<Rational>(side * side));
    counts_[0][0] = 1;  // the empty walk carries weight 1
    for (int n = 1; n <= order; ++n) {
        const auto& prev = counts_[n - 1];
        auto& cur = counts_[n];
        for (int i = 0; i < side; ++i) {
            for (int j = 0; j < side; ++j) {
                const Rational& src = prev[i * side + j];
                if (is_zero(src)) continue;
                for (const auto& [dx, dy] : model_.steps) {
                    int ni = i + dx;
                    int nj = j + dy;
                    if (ni < 0 || nj < 0 || ni > order || nj > order) continue;
                    Rational weight = src;
                    if (ni == 0 && nj == 0)
                        weight *= model_.w.c;
                    else if (nj == 0)
                        weight *= model_.w.a;
                    else if (ni == 0)
                        weight *= model_.w.b;
                    cur[ni * side + nj] += weight;
                }
            }
        }
    }
}

const Rational& WalkTable::count(int n, int i, int j) const {
    if (n < 0 || n > order_ || i < 0 || j < 0) return kZero;
    if (i > order_ || j > order_) return kZero;
    return counts_[n][i * (order_ + 1) + j];
}

PuiseuxSeries WalkTable::series(const Selector& sel) const {
    PuiseuxSeries out = PuiseuxSeries::zero_with_acc(order_);
    for (int n = 0; n <= order_; ++n) {
        LaurentPoly slice;
        switch (sel.kind) {
            case Selector::Kind::Full:
                raise(ErrorCode::SelectorOutOfRange,
                      "full tables are bivariate; use layer()");
            case Selector::Kind::LineY:
                if (sel.i < 0)
                    raise(ErrorCode::SelectorOutOfRange,
                          "line_y(" + std::to_string(sel.i) + ") can have no support");
                for (int i = 0; i <= order_; ++i) slice.add_term(i, count(n, i, sel.i));
                break;
            case Selector::Kind::LineX:
                if (sel.i < 0)
                    raise(ErrorCode::SelectorOutOfRange,
                          "line_x(" + std::to_string(sel.i) + ") can have no support");
                for (int j = 0; j <= order_; ++j) slice.add_term(j, count(n, sel.i, j));
                break;
            case Selector::Kind::Diag:
                for (int i = 0; i <= order_; ++i) slice.add_term(i, count(n, i, i + sel.j));
                break;
            case Selector::Kind::Point:
                if (sel.i < 0 || sel.j < 0)
                    raise(ErrorCode::SelectorOutOfRange,
                          "point(" + std::to_string(sel.i) + "," + std::to_string(sel.j) +
                              ") can have no support");
                slice.add_term(0, count(n, sel.i, sel.j));
                break;
        }
        if (!slice.is_zero())
            out = out + PuiseuxSeries::from_x_poly(slice) *
                            PuiseuxSeries::monomial(Rational(1), 0, n);
    }
    return out.truncated(order_);
}

XYPoly WalkTable::layer(int n) const {
    XYPoly out;
    if (n < 0 || n > order_) return out;
    for (int i = 0; i <= order_; ++i)
        for (int j = 0; j <= order_; ++j) out.add_term(i, j, count(n, i, j));
    return out;
}

std::vector<XYPoly> WalkTable::functional_equation_residual() const {
    // K(x,y) Q(x,y) = 1/c
    //   + (1/a)(a - 1 - t a A) Q(x,0) + (1/b)(b - 1 - t b B) Q(0,y)
    //   + (origin_const + t G) Q(0,0),
    // compared order by order in t.
    std::vector<XYPoly> residuals;
    const Rational& a = model_.w.a;
    const Rational& b = model_.w.b;
    const Rational& c = model_.w.c;
    for (int n = 0; n <= order_; ++n) {
        XYPoly lhs = layer(n);
        if (n >= 1) lhs = lhs - model_.step_poly * layer(n - 1);

        XYPoly x_axis_n;   // Q(x, 0) layer n
        XYPoly y_axis_n;   // Q(0, y) layer n
        for (int i = 0; i <= order_; ++i) x_axis_n.add_term(i, 0, count(n, i, 0));
        for (int j = 0; j <= order_; ++j) y_axis_n.add_term(0, j, count(n, 0, j));
        XYPoly x_axis_p;
        XYPoly y_axis_p;
        if (n >= 1) {
            for (int i = 0; i <= order_; ++i) x_axis_p.add_term(i, 0, count(n - 1, i, 0));
            for (int j = 0; j <= order_; ++j) y_axis_p.add_term(0, j, count(n - 1, 0, j));
        }

        XYPoly rhs;
        if (n == 0) rhs.add_term(0, 0, Rational(1) / c);
        rhs = rhs + x_axis_n.scaled((a - 1) / a) - model_.a_poly * x_axis_p;
        rhs = rhs + y_axis_n.scaled((b - 1) / b) - model_.b_poly * y_axis_p;
        rhs.add_term(0, 0, model_.origin_const * count(n, 0, 0));
        if (n >= 1) rhs = rhs + model_.g_poly.scaled(count(n - 1, 0, 0));

        residuals.push_back(lhs - rhs);
    }
    return residuals;
}

}  // namespace qwalk
