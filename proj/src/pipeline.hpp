// End-to-end solver for both walk models.
//
// The chain, per model:
//   1. orbit system and its annihilators (verified),
//   2. full-orbit sum at [y^0], reduced to the principal sections, split into
//      nonnegative/negative x-parts -- the boundary-exchange relations,
//   3. half-orbit sum at [y^0] against the kernel coefficient extraction,
//      assembled as an exact pair  E + O*sqrt(Delta) = 0,
//   4. elimination of the mirrored section(s) using the step-2 relations,
//   5. multiplication by the canonical square-root carriers and a three-way
//      x-split; the nonnegative part carries Q(x,0), the flipped negative
//      part carries the diagonal section,
//   6. substitution of the admissible kernel roots (plus the x^0 slice and,
//      on degenerate strata, low-slice and symmetry equations) to produce
//      scalar equations in the corner unknowns,
//   7. a determinant-checked linear solve, back-substitution by exact
//      order-by-order division for Q(x,0) and the diagonal section, the
//      y-axis section from the step-2 relation, and the full series Q(x,y)
//      from the defining equation.
// The direct model additionally substitutes Q(0,0) obtained from the reverse
// model at the same weights before step 7 (its own five-equation system is
// singular; this is checked).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linear_form.hpp"
#include "model.hpp"
#include "xypoly.hpp"

namespace qwalk {

// Leading-term report for one candidate equation set's determinant.
struct DeterminantDiagnostic {
    std::string name;        // "D[1,3,7]", "D5x5[1,3,5,7,9]", ...
    std::vector<int> labels;  // equation labels (0 is the x^0-slice equation)
    bool vanishes = false;   // zero through the working order
    int leading_order = 0;   // t-order of the leading term when not vanishing
    Rational leading_coeff;  // its x-free rational coefficient
};

struct Solution {
    ModelKind kind = ModelKind::ReverseKreweras;
    Weights w;
    int order = 0;          // every reported series is exact through t^order
    int working_order = 0;  // internal truncation order actually used

    PuiseuxSeries q00;                           // Q(0,0)
    std::map<UnknownTag, PuiseuxSeries> corner;  // solved point unknowns
    PuiseuxSeries qx0;  // Q(x,0) as a power series in x
    PuiseuxSeries q0y;  // Q(0,y), written in the variable x
    PuiseuxSeries qd0;  // main-diagonal section, power series in x
    std::vector<XYPoly> qxy;  // Q(x,y) layers by t-order, 0..order

    std::vector<DeterminantDiagnostic> determinants;
    std::vector<int> chosen_labels;  // the equation set that solved the system
    std::string notes;               // dispatch and normalization notes
};

// Solves the model to the requested order. The working order defaults to a
// model-dependent allowance above max(2*order, order+16) and is raised
// automatically (bounded retries) when precision runs out.
Solution solve_model(const Model& model, int order,
                     std::optional<int> working_order = std::nullopt);

}  // namespace qwalk
