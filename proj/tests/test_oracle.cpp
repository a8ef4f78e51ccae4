// Tests for the brute-force enumeration oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "walk_oracle.hpp"

using namespace qwalk;

namespace {

Rational rat(long num, long den = 1) {
    Rational r(static_cast<int>(num));
    r /= Rational(static_cast<int>(den));
    return r;
}

const std::vector<Weights> kWeightPoints = {
    {rat(2), rat(3), rat(5)},          {rat(1, 2), rat(3), rat(2)},
    {rat(3), rat(2), rat(5)},          {rat(2), rat(2), rat(7)},
    {rat(3), rat(1), rat(2)},          {rat(1), rat(3), rat(2)},
    {rat(3, 2), rat(1, 2), rat(1)},    {rat(1), rat(1), rat(1)},
};

}  // namespace

TEST_CASE("length-1 layer of the reverse model is a*x + b*y") {
    for (const Weights& w : kWeightPoints) {
        Model m = make_model(ModelKind::ReverseKreweras, w);
        WalkTable table(m, 4);
        CHECK(table.count(1, 1, 0) == w.a);
        CHECK(table.count(1, 0, 1) == w.b);
        CHECK(table.count(1, 0, 0) == rat(0));
        CHECK(table.count(1, 1, 1) == rat(0));
        // Single east step, weighted by the x-axis weight.
        LaurentPoly t1 = table.series(Selector::line_y(0)).coeff(1);
        LaurentPoly expect;
        expect.add_term(1, w.a);
        CHECK(t1 == expect);
    }
}

TEST_CASE("the two length-3 returning walks carry weight c(a+b)") {
    for (ModelKind kind : {ModelKind::ReverseKreweras, ModelKind::Kreweras}) {
        for (const Weights& w : kWeightPoints) {
            Model m = make_model(kind, w);
            WalkTable table(m, 4);
            PuiseuxSeries q00 = table.series(Selector::point(0, 0));
            CHECK(q00.coeff(0).coeff(0) == rat(1));  // empty walk
            CHECK(q00.coeff(1).is_zero());
            CHECK(q00.coeff(2).is_zero());
            CHECK(q00.coeff(3).coeff(0) == w.c * (w.a + w.b));
        }
    }
}

TEST_CASE("every diagonal series starts with the empty walk") {
    for (ModelKind kind : {ModelKind::ReverseKreweras, ModelKind::Kreweras}) {
        Model m = make_model(kind, Weights{rat(2), rat(3), rat(5)});
        WalkTable table(m, 6);
        LaurentPoly d0 = table.series(Selector::diag(0)).coeff(0);
        CHECK(d0.coeff(0) == rat(1));
        CHECK(d0.terms().size() == 1);
    }
}

TEST_CASE("unit-weight Kreweras returning walks: 1, 2, 16, 192") {
    Model m = make_model(ModelKind::Kreweras, Weights{rat(1), rat(1), rat(1)});
    WalkTable table(m, 9);
    PuiseuxSeries q00 = table.series(Selector::point(0, 0));
    CHECK(q00.coeff(0).coeff(0) == rat(1));
    CHECK(q00.coeff(3).coeff(0) == rat(2));
    CHECK(q00.coeff(6).coeff(0) == rat(16));
    CHECK(q00.coeff(9).coeff(0) == rat(192));
    for (int n : {1, 2, 4, 5, 7, 8}) CHECK(q00.coeff(n).is_zero());
}

TEST_CASE("support is confined to the reachable cone") {
    // Reverse Kreweras steps change i+j by +1, +1, -2, so an n-step walk
    // ends at (i, j) only if i+j <= n and n-(i+j) is a multiple of 3.
    // Kreweras steps change i+j by +2, -1, -1, so the reachable set is
    // i+j <= 2n with n+(i+j) a multiple of 3.
    for (ModelKind kind : {ModelKind::ReverseKreweras, ModelKind::Kreweras}) {
        Model m = make_model(kind, Weights{rat(3), rat(2), rat(5)});
        int order = 10;
        WalkTable table(m, order);
        for (int n = 0; n <= order; ++n)
            for (int i = 0; i <= 2 * order; ++i)
                for (int j = 0; j <= 2 * order; ++j) {
                    bool reachable;
                    if (kind == ModelKind::ReverseKreweras)
                        reachable = (i + j <= n) && ((n - i - j) % 3 == 0);
                    else
                        reachable = (i + j <= 2 * n) && ((n + i + j) % 3 == 0);
                    if (!reachable) CHECK(table.count(n, i, j) == rat(0));
                    // Walks cannot leave the quarter plane: counts are defined
                    // only on the grid, and every weight is positive, so any
                    // nonzero entry within the cone is a genuine walk count.
                    if (reachable && table.count(n, i, j) != 0)
                        CHECK(table.count(n, i, j) > 0);
                }
    }
}

TEST_CASE("selectors are consistent with each other and with layers") {
    Model m = make_model(ModelKind::ReverseKreweras, Weights{rat(1, 2), rat(3), rat(2)});
    int order = 8;
    WalkTable table(m, order);
    for (int n = 0; n <= order; ++n) {
        XYPoly layer = table.layer(n);
        // line_y(i) collects row j = i with x marking the x-coordinate.
        for (int i = 0; i <= 2; ++i) {
            LaurentPoly row = table.series(Selector::line_y(i)).coeff(n);
            for (int k = 0; k <= order; ++k) CHECK(row.coeff(k) == layer.coeff(k, i));
        }
        // line_x(i) collects column x = i with x marking the y-coordinate.
        for (int i = 0; i <= 2; ++i) {
            LaurentPoly col = table.series(Selector::line_x(i)).coeff(n);
            for (int k = 0; k <= order; ++k) CHECK(col.coeff(k) == layer.coeff(i, k));
        }
        // diag(j) collects (i, i + j) with x marking i.
        for (int j = -1; j <= 1; ++j) {
            LaurentPoly diag = table.series(Selector::diag(j)).coeff(n);
            for (int k = 0; k <= order; ++k) {
                Rational want = k + j >= 0 ? table.count(n, k, k + j) : rat(0);
                CHECK(diag.coeff(k) == want);
            }
        }
        // point(i, j) is the single count.
        CHECK(table.series(Selector::point(1, 2)).coeff(n).coeff(0) == table.count(n, 1, 2));
    }
}

TEST_CASE("negative selectors with no support are rejected") {
    Model m = make_model(ModelKind::Kreweras, Weights{rat(1), rat(1), rat(1)});
    WalkTable table(m, 4);
    CHECK_THROWS_AS(table.series(Selector::line_y(-1)), Error);
    CHECK_THROWS_AS(table.series(Selector::line_x(-2)), Error);
    CHECK_THROWS_AS(table.series(Selector::point(-1, 0)), Error);
    try {
        table.series(Selector::line_y(-3));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SelectorOutOfRange);
    }
    // diag(-1) has genuine support (walks below the main diagonal): no error.
    CHECK_NOTHROW(table.series(Selector::diag(-1)));
}

TEST_CASE("functional equation residual vanishes on the table") {
    for (ModelKind kind : {ModelKind::ReverseKreweras, ModelKind::Kreweras}) {
        for (const Weights& w : kWeightPoints) {
            Model m = make_model(kind, w);
            WalkTable table(m, 10);
            std::vector<XYPoly> residual = table.functional_equation_residual();
            CHECK(!residual.empty());
            for (const XYPoly& layer : residual) CHECK(layer.terms().empty());
        }
    }
}

TEST_CASE("walk reversal: both models agree on returning walks through t^24") {
    for (const Weights& w : {Weights{rat(2), rat(3), rat(5)}, Weights{rat(3, 2), rat(1, 2), rat(1)}}) {
        Model reverse = make_model(ModelKind::ReverseKreweras, w);
        Model direct = make_model(ModelKind::Kreweras, w);
        int order = 24;
        PuiseuxSeries qr = WalkTable(reverse, order).series(Selector::point(0, 0));
        PuiseuxSeries qd = WalkTable(direct, order).series(Selector::point(0, 0));
        CHECK(qr.agrees_with(qd, order, 1));
    }
}
