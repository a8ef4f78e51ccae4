// The two walk models: step sets, boundary weights and kernel data.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "xypoly.hpp"

namespace qwalk {

enum class ModelKind { Kreweras, ReverseKreweras };

ModelKind parse_model_kind(const std::string& name);
const char* model_kind_name(ModelKind kind);

struct Weights {
    Rational a{1};
    Rational b{1};
    Rational c{1};
};

struct Model {
    ModelKind kind;
    Weights w;

    std::vector<std::pair<int, int>> steps;

    XYPoly step_poly;  // S(x, y)
    XYPoly a_poly;     // A(x, y), x-axis contact steps
    XYPoly b_poly;     // B(x, y), y-axis contact steps
    XYPoly g_poly;     // G(x, y), origin contact steps

    TriPoly kernel;           // K = 1 - t S
    Rational origin_const;    // (ac + bc - ab - abc) / (abc)

    // y-sections of S: S = A_minus/y + A_zero + A_plus*y, each a monomial in x.
    LaurentPoly sect_minus;
    LaurentPoly sect_zero;
    LaurentPoly sect_plus;

    // The orbit of (x, y) under the symmetry group, starting at the identity:
    // (x,y), (1/(xy), y), (y, 1/(xy)), (y, x), (1/(xy), x), (x, 1/(xy)).
    std::array<MonomialMap, 6> orbit;

    // (1/a)(a - 1 - t a A(u, v)) evaluated at orbit element g.
    TriPoly a_weight_at(int g) const;
    // (1/b)(b - 1 - t b B(u, v)) evaluated at orbit element g.
    TriPoly b_weight_at(int g) const;
    // origin_const + t G(u, v) evaluated at orbit element g.
    TriPoly origin_weight_at(int g) const;
};

Model make_model(ModelKind kind, const Weights& w);

// Swapped boundary weights (a <-> b); the reflected model in x <-> y.
inline Weights swapped(const Weights& w) { return Weights{w.b, w.a, w.c}; }

}  // namespace qwalk
