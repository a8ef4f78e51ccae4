// Power-series roots of the boundary kernel polynomials.
//
// After the master relation of a model is separated into its nonnegative and
// negative x-parts, each part carries one unknown section multiplied by a
// fixed polynomial in x (quadratic factors with t-polynomial coefficients).
// Substituting a root x(t) of such a factor turns the relation into a scalar
// equation. Every factor contributes at most one admissible root: the branch
// of its quadratic formula whose t-valuation is positive. At special weights
// a factor can lose its admissible branch entirely (the discriminant's square
// root leaves the rational Puiseux ring, a denominator vanishes, or the root
// collapses to zero); such a slot is reported with the reason instead of a
// root so the solving stage can fall back to other equations.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "puiseux.hpp"

namespace qwalk {

struct KernelSlot {
    int label = 0;      // odd index naming the factor's root pair
    bool flipped = false;  // true: root of the negative-part (x -> 1/x) kernel
    std::optional<PuiseuxSeries> root;  // admissible branch, if any
    std::string degenerate_reason;      // set when `root` is empty
};

// All root slots of the model at its weights, each root accurate through
// t-order `want_order` at least. Slot labels follow the factor order of the
// split relations: for the reverse model 1,3 belong to the nonnegative part
// and 5,7 to the flipped negative part; for the direct model 1,3,5 belong to
// the nonnegative part and 7,9 to the flipped negative part.
std::vector<KernelSlot> kernel_root_slots(const Model& model, int want_order);

// The boundary kernel polynomials as explicit factor lists (exact series in
// t and x): first the nonnegative-part factors, then the flipped-part
// factors, in slot order. Exposed for tests and reporting.
struct KernelFactor {
    int slot = 0;
    bool flipped = false;
    PuiseuxSeries q0, q1, q2;  // q0 + q1 x + q2 x^2, x-free t-polynomials
};
std::vector<KernelFactor> boundary_kernel_factors(const Model& model);

}  // namespace qwalk
