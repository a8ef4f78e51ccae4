#pragma once

#include <vector>

#include "puiseux.hpp"

namespace qwalk {

// Branches x(t) solving P(x(t); t) = 0, where P is a Laurent polynomial in x
// whose coefficients are t-series. Branches are found with the Newton-polygon
// method: each lower-hull edge of slope -g contributes roots of t-valuation g,
// a simple edge root is sharpened by Newton iteration, and a repeated edge
// root is separated by recursing on x = t^g (z0 + w), extending the
// ramification as needed.
//
// `finite` collects branches with positive valuation (x(t) -> 0 as t -> 0),
// `divergent` those with negative valuation. A valuation-zero branch fits
// neither class and raises DegenerateRegime.
struct RootSplit {
    std::vector<PuiseuxSeries> finite;
    std::vector<PuiseuxSeries> divergent;
    int degree = 0;  // root count with multiplicity = x-degree span of P
};

RootSplit puiseux_roots(const PuiseuxSeries& laurent_in_x, int want_acc);

// Deterministic order used for reporting roots: valuation ascending, then
// coefficient sequence compared at increasing t-order. Equal series (through
// their common accuracy) raise IndistinctLeadingTerms.
bool root_order_less(const PuiseuxSeries& lhs, const PuiseuxSeries& rhs);

}  // namespace qwalk
