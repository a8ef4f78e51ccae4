#pragma once

#include <array>

#include "linear_form.hpp"
#include "model.hpp"

namespace qwalk {

// The defining relation transported around the six orbit elements reads, in
// matrix form, K * diag(Q(g)) = M * V + C with
//   V = (Q(x,0), Q(0,y), Q(1/(xy),0), Q(0,1/(xy)), Q(0,x), Q(y,0))
// and C collecting the Q(0,0) and constant parts. `row_annihilator` is the
// alternating vector that kills all of M; `half_annihilator` kills the four
// V-columns that do not involve the principal sections Q(x,0), Q(0,x).
struct OrbitSystem {
    std::array<std::array<TriPoly, 6>, 6> m;       // m[row][col]
    std::array<TriPoly, 6> c_origin;               // coefficient of Q(0,0) per row
    std::array<Rational, 6> c_const;               // constant part per row
    std::array<TriPoly, 6> row_annihilator;        // kills every column of m
    std::array<TriPoly, 6> half_annihilator;       // kills columns 1,2,3,5
};

OrbitSystem build_orbit_system(const Model& model);

// Exact annihilation checks; raises NullvectorCheckFailed on any residue.
// For the full annihilator, N * C must vanish for the reverse model, and for
// the direct model it must reduce to the known closed form
//   t^3 (a-b) (x-y) (x^2 y - 1) (x y^2 - 1) [ab - (ab-ac-bc+abc) Q(0,0)] / (abc xy)
// whose Q(0,0)-free and Q(0,0) parts are both verified.
void verify_orbit_system(const Model& model, const OrbitSystem& sys);

// Weighted sums over the orbit used by the solving stages:
//   full_sum_slice: [y^k] sum_g N_g * (Q(g) - (1/K)(C_g-part))  -- assembled as
//     the pair of relations L and the 1/K-side collected by y-degree.
// Both return the left side [y^k] sum_g w_g Q(g) as a LinearForm, and expose
// the y-slices of the right-hand coefficient polynomials so the caller can
// pair them with the kernel coefficient extraction.
struct OrbitSumParts {
    LinearForm lhs;                      // [y^k] sum of w_g Q(g), tagged unknowns
    std::map<int, LinearForm> rhs_slices;  // y-degree -> [y^m] of the 1/K numerator
};

// Full-orbit sum with weights N_g: numerator is N * C.
OrbitSumParts full_orbit_sum(const Model& model, const OrbitSystem& sys, int k);

// Half-orbit sum with weights N2_g: numerator is N2 * C2 where
// C2_i = C_i + m[i][0] Q(x,0) + m[i][4] Q(0,x).
OrbitSumParts half_orbit_sum(const Model& model, const OrbitSystem& sys, int k);

}  // namespace qwalk
