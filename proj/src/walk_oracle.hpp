// Brute-force enumeration oracle: dynamic programming over walk endpoints.
#pragma once

#include <vector>

#include "model.hpp"
#include "puiseux.hpp"

namespace qwalk {

// Extraction selectors for boundary series.
struct Selector {
    enum class Kind { Full, LineY, LineX, Diag, Point } kind = Kind::Full;
    int i = 0;
    int j = 0;

    static Selector full() { return {Kind::Full, 0, 0}; }
    static Selector line_y(int i) { return {Selector::Kind::LineY, i, 0}; }
    static Selector line_x(int i) { return {Selector::Kind::LineX, i, 0}; }
    static Selector diag(int j) { return {Selector::Kind::Diag, 0, j}; }
    static Selector point(int i, int j) { return {Selector::Kind::Point, i, j}; }
};

class WalkTable {
  public:
    WalkTable(const Model& model, int order);

    const Model& model() const { return model_; }
    int order() const { return order_; }

    // Weighted count of walks of length n ending at (i, j).
    const Rational& count(int n, int i, int j) const;

    // Q restricted by the selector, as a series in t with x-Laurent
    // coefficients. line_y(i): walks ending at height j = i, x marks the
    // x-coordinate. line_x(i): walks ending at column x = i, x marks the
    // y-coordinate. diag(j): walks ending at (i, i + j), x marks i.
    // point(i, j): a scalar series.
    PuiseuxSeries series(const Selector& sel) const;

    // The length-n layer as a polynomial in x, y.
    XYPoly layer(int n) const;

    // K Q - boundary terms, per t-order; all-zero iff the functional equation
    // holds on this table through the requested order.
    std::vector<XYPoly> functional_equation_residual() const;

  private:
    Model model_;
    int order_;
    // counts_[n] is a dense (order+1) x (order+1) grid, row-major by x.
    std::vector<std::vector<Rational>> counts_;
};

}  // namespace qwalk
