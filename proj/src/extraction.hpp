#pragma once

#include <functional>
#include <set>

#include "linear_form.hpp"
#include "model.hpp"

namespace qwalk {

// Extraction of y-coefficients from products against the orbit of Q under the
// group of the step set. Orbit elements are indexed 0..5 as in Model::orbit:
//   0:(x,y)  1:(1/(xy),y)  2:(y,1/(xy))  3:(y,x)  4:(1/(xy),x)  5:(x,1/(xy))
//
// [y^m] coeff(x,y) * Q(g) expands through the substitution table of element g
// into line, diagonal, and point unknowns with x-Laurent coefficients.
LinearForm y_slice_of_orbit_term(const Model& model, const TriPoly& coeff, int g, int k);

// [y^m] coeff * Q(u, 0) and [y^m] coeff * Q(0, v) where u, v are the
// arguments of orbit element g.
LinearForm y_slice_of_x_axis_term(const Model& model, const TriPoly& coeff, int g, int k);
LinearForm y_slice_of_y_axis_term(const Model& model, const TriPoly& coeff, int g, int k);

// [y^k] of the defining relation transported to orbit element g:
//   K * Q(g) - Aw(g) * Q(g_x, 0) - Bw(g) * Q(0, g_y) - Ow(g) * Q(0,0) - [g row] 1/c = 0
// where Aw, Bw, Ow are the boundary-interaction coefficients of the model.
LinearForm functional_row_slice(const Model& model, int g, int k);

// The scalar [x^p y^q] slice of the defining relation (row 0): a relation
// among lattice-point unknowns used to push points back to the canonical set.
LinearForm point_relation(const Model& model, int p, int q);

// Membership test for the canonical point set a model's relations are pushed
// back to: both axes for the reverse model, the x-axis for the direct model.
using PointPredicate = std::function<bool(const UnknownTag&)>;
PointPredicate canonical_points(const Model& model);

// Rewrites every Point term outside `canon` through scalar point relations
// until only canonical points remain. Function tags are left untouched.
LinearForm reduce_points(const Model& model, LinearForm form, const PointPredicate& canon);

// Eliminates every function tag outside `wanted` through section relations
// (line sections through their recurrence in the slice index, diagonal
// sections toward indexes 0 and 1), then reduces non-canonical points.
LinearForm reduce_to_sections(const Model& model, LinearForm form,
                              const std::set<UnknownTag>& wanted,
                              const PointPredicate& canon);

}  // namespace qwalk
