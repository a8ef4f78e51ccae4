#include "orbit.hpp"

#include <stdexcept>

#include "errors.hpp"
#include "extraction.hpp"

namespace qwalk {
namespace {

// c0 + t * c1 as a polynomial in t with xy-coefficients.
TriPoly affine_t(const XYPoly& c0, const XYPoly& c1) {
    TriPoly out;
    out.add_term(0, c0);
    out.add_term(1, c1);
    return out;
}

XYPoly xy_mono(const Rational& q, int xe, int ye) { return XYPoly::monomial(q, xe, ye); }

int x_axis_column(const MonomialImage& u) {
    if (u.x_exp == 1 && u.y_exp == 0) return 0;    // Q(x,0)
    if (u.x_exp == -1 && u.y_exp == -1) return 2;  // Q(1/(xy),0)
    if (u.x_exp == 0 && u.y_exp == 1) return 5;    // Q(y,0)
    throw std::logic_error("unexpected first orbit argument");
}

int y_axis_column(const MonomialImage& v) {
    if (v.x_exp == 0 && v.y_exp == 1) return 1;    // Q(0,y)
    if (v.x_exp == -1 && v.y_exp == -1) return 3;  // Q(0,1/(xy))
    if (v.x_exp == 1 && v.y_exp == 0) return 4;    // Q(0,x)
    throw std::logic_error("unexpected second orbit argument");
}

std::array<TriPoly, 6> reverse_annihilator(const Weights& w, bool half) {
    const Rational& a = w.a;
    const Rational& b = w.b;
    TriPoly one_m_b_tbx = affine_t(XYPoly(1 - b), xy_mono(b, 1, 0));    // 1-b+tbx
    TriPoly one_m_b_tby = affine_t(XYPoly(1 - b), xy_mono(b, 0, 1));    // 1-b+tby
    TriPoly one_m_a_tay = affine_t(XYPoly(1 - a), xy_mono(a, 0, 1));    // 1-a+tay
    TriPoly one_m_a_tax = affine_t(XYPoly(1 - a), xy_mono(a, 1, 0));    // 1-a+tax
    TriPoly tb_xy = affine_t(xy_mono(1 - b, 1, 1), XYPoly(Rational(b)));  // tb+(1-b)xy
    TriPoly ta_xy = affine_t(xy_mono(1 - a, 1, 1), XYPoly(Rational(a)));  // ta+(1-a)xy
    auto mono = [](const Rational& q, int xe, int ye) {
        TriPoly t;
        t.add_term(0, XYPoly::monomial(q, xe, ye));
        return t;
    };
    if (half)
        return {mono(-1, 1, 0) * one_m_b_tbx * one_m_a_tay,
                mono(1, 0, -1) * one_m_a_tay * tb_xy,
                TriPoly{},
                TriPoly{},
                mono(-1, 0, -1) * one_m_a_tax * tb_xy,
                TriPoly{}};
    // The sign of the last row is forced by the cancellation conditions on
    // the Q(x,0) and Q(0,1/(xy)) columns.
    return {mono(-1, 0, 1) * one_m_b_tbx * one_m_a_tay,
            mono(1, -1, 0) * one_m_a_tay * tb_xy,
            mono(-1, -1, 0) * one_m_b_tby * ta_xy,
            mono(1, 0, 1) * one_m_a_tax * one_m_b_tby,
            mono(-1, -1, 0) * one_m_a_tax * tb_xy,
            mono(1, -1, 0) * one_m_b_tbx * ta_xy};
}

std::array<TriPoly, 6> direct_annihilator(const Weights& w, bool half) {
    const Rational& a = w.a;
    const Rational& b = w.b;
    TriPoly f_ax = affine_t(xy_mono(1 - a, 1, 0), XYPoly(Rational(a)));  // at+(1-a)x
    TriPoly f_bx = affine_t(xy_mono(1 - b, 1, 0), XYPoly(Rational(b)));  // bt+(1-b)x
    TriPoly f_ay = affine_t(xy_mono(1 - a, 0, 1), XYPoly(Rational(a)));  // at+(1-a)y
    TriPoly f_by = affine_t(xy_mono(1 - b, 0, 1), XYPoly(Rational(b)));  // bt+(1-b)y
    TriPoly g_a = affine_t(XYPoly(1 - a), xy_mono(a, 1, 1));             // 1-a+atxy
    TriPoly g_b = affine_t(XYPoly(1 - b), xy_mono(b, 1, 1));             // 1-b+btxy
    auto mono = [](const Rational& q, int xe, int ye) {
        TriPoly t;
        t.add_term(0, XYPoly::monomial(q, xe, ye));
        return t;
    };
    if (half)
        return {f_ax * g_b,
                mono(-1, -1, 0) * f_ax * f_bx,
                TriPoly{},
                TriPoly{},
                mono(1, 0, -1) * f_bx * f_ay,
                TriPoly{}};
    // Normalized so that the annihilated inhomogeneous part carries the
    // closed form with a leading +t^3 (a-b)(x-y) factor; see the verifier.
    return {mono(-1, 0, 0) * f_ax * f_by * g_a * g_b,
            mono(1, -1, 0) * f_ax * f_bx * f_by * g_a,
            mono(-1, -1, 0) * f_ax * f_bx * f_ay * g_b,
            f_bx * f_ay * g_a * g_b,
            mono(-1, 0, -1) * f_bx * f_ay * f_by * g_a,
            mono(1, 0, -1) * f_ax * f_ay * f_by * g_b};
}

}  // namespace

OrbitSystem build_orbit_system(const Model& model) {
    OrbitSystem sys;
    for (int g = 0; g < 6; ++g) {
        sys.m[g][x_axis_column(model.orbit[g].x)] = model.a_weight_at(g);
        sys.m[g][y_axis_column(model.orbit[g].y)] = model.b_weight_at(g);
        sys.c_origin[g] = model.origin_weight_at(g);
        sys.c_const[g] = Rational(1) / model.w.c;
    }
    bool reverse = model.kind == ModelKind::ReverseKreweras;
    sys.row_annihilator =
        reverse ? reverse_annihilator(model.w, false) : direct_annihilator(model.w, false);
    sys.half_annihilator =
        reverse ? reverse_annihilator(model.w, true) : direct_annihilator(model.w, true);
    return sys;
}

void verify_orbit_system(const Model& model, const OrbitSystem& sys) {
    for (int col = 0; col < 6; ++col) {
        TriPoly acc;
        for (int g = 0; g < 6; ++g) acc = acc + sys.row_annihilator[g] * sys.m[g][col];
        if (!acc.is_zero())
            raise(ErrorCode::NullvectorCheckFailed,
                  "orbit annihilator leaves column " + std::to_string(col));
    }
    for (int col : {1, 2, 3, 5}) {
        TriPoly acc;
        for (int g = 0; g < 6; ++g) acc = acc + sys.half_annihilator[g] * sys.m[g][col];
        if (!acc.is_zero())
            raise(ErrorCode::NullvectorCheckFailed,
                  "section annihilator leaves column " + std::to_string(col));
    }
    TriPoly nc_origin, nc_const;
    for (int g = 0; g < 6; ++g) {
        nc_origin = nc_origin + sys.row_annihilator[g] * sys.c_origin[g];
        nc_const = nc_const + sys.row_annihilator[g].scaled(sys.c_const[g]);
    }
    if (model.kind == ModelKind::ReverseKreweras) {
        if (!nc_origin.is_zero() || !nc_const.is_zero())
            raise(ErrorCode::NullvectorCheckFailed,
                  "annihilator applied to the inhomogeneous part must vanish");
        return;
    }
    // Direct model: the annihilated inhomogeneous part keeps the closed form
    //   t^3 (a-b)(x-y)(x^2 y - 1)(x y^2 - 1) [ab - (ab-ac-bc+abc) Q(0,0)] / (abc xy).
    const Rational& a = model.w.a;
    const Rational& b = model.w.b;
    const Rational& c = model.w.c;
    XYPoly shape = (XYPoly::monomial(Rational(1), 1, 0) - XYPoly::monomial(Rational(1), 0, 1)) *
                   (XYPoly::monomial(Rational(1), 2, 1) - XYPoly(Rational(1))) *
                   (XYPoly::monomial(Rational(1), 1, 2) - XYPoly(Rational(1))) *
                   XYPoly::monomial(Rational(1), -1, -1);
    Rational gamma = a - b;
    TriPoly expected_const;
    expected_const.add_term(3, shape.scaled(gamma * a * b / c));
    TriPoly expected_origin;
    expected_origin.add_term(3,
                             shape.scaled(-gamma * (a * b - a * c - b * c + a * b * c) / c));
    if (!(nc_const == expected_const) || !(nc_origin == expected_origin))
        raise(ErrorCode::NullvectorCheckFailed,
              "annihilated inhomogeneous part differs from its closed form");
}

namespace {

OrbitSumParts orbit_sum(const Model& model, const OrbitSystem& sys,
                        const std::array<TriPoly, 6>& weights, bool half, int k) {
    OrbitSumParts parts;
    for (int g = 0; g < 6; ++g) {
        if (weights[g].is_zero()) continue;
        parts.lhs = parts.lhs + y_slice_of_orbit_term(model, weights[g], g, k);
    }
    TriPoly num_origin, num_const, num_line_y, num_line_x;
    for (int g = 0; g < 6; ++g) {
        if (weights[g].is_zero()) continue;
        num_origin = num_origin + weights[g] * sys.c_origin[g];
        num_const = num_const + weights[g].scaled(sys.c_const[g]);
        if (half) {
            num_line_y = num_line_y + weights[g] * sys.m[g][0];
            num_line_x = num_line_x + weights[g] * sys.m[g][4];
        }
    }
    int lo = 0, hi = 0;
    for (const TriPoly* part : {&num_origin, &num_const, &num_line_y, &num_line_x}) {
        if (part->is_zero()) continue;
        lo = std::min(lo, part->min_y_exp());
        hi = std::max(hi, part->max_y_exp());
    }
    for (int m = lo; m <= hi; ++m) {
        LinearForm slice;
        slice.add_known(num_const.y_slice(m));
        slice.add_term(UnknownTag::point(0, 0), num_origin.y_slice(m));
        if (half) {
            slice.add_term(UnknownTag::line_y(0), num_line_y.y_slice(m));
            slice.add_term(UnknownTag::line_x(0), num_line_x.y_slice(m));
        }
        if (!slice.is_trivial()) parts.rhs_slices.emplace(m, std::move(slice));
    }
    return parts;
}

}  // namespace

OrbitSumParts full_orbit_sum(const Model& model, const OrbitSystem& sys, int k) {
    return orbit_sum(model, sys, sys.row_annihilator, false, k);
}

OrbitSumParts half_orbit_sum(const Model& model, const OrbitSystem& sys, int k) {
    return orbit_sum(model, sys, sys.half_annihilator, true, k);
}

}  // namespace qwalk
