#pragma once

#include <vector>

#include "model.hpp"
#include "newton_puiseux.hpp"
#include "puiseux.hpp"

namespace qwalk {

// Discriminant of the kernel as a quadratic in y:
//   Delta(x; t) = (1 - t S0(x))^2 - 4 t^2 S-(x) S+(x)
// where S-, S0, S+ are the y-sections of the step polynomial, together with
// its canonical split
//   Delta = Delta0 * DeltaPlus * DeltaMinus,
//   DeltaMinus = prod over vanishing branches X_i of (1 - X_i / x),
//   DeltaPlus  = prod over divergent branches X_i of (1 - x / X_i),
// (DeltaMinus is a series in 1/x, DeltaPlus in x, both with constant term 1,
// and Delta0 is x-free). The two square-root carriers used by the solving
// stages are kept ready to use:
//   inv_sqrt_plus  = 1 / sqrt(DeltaPlus)        x-support >= 0
//   sqrt_zero_minus = sqrt(Delta0 * DeltaMinus)  x-support <= 0
struct KernelFactorization {
    PuiseuxSeries delta;            // exact Laurent polynomial
    RootSplit roots;                // finite = vanishing branches, divergent others
    PuiseuxSeries delta_zero;       // x-free factor
    PuiseuxSeries delta_plus;       // divergent-branch factor
    PuiseuxSeries delta_minus;      // vanishing-branch factor
    PuiseuxSeries inv_sqrt_plus;
    PuiseuxSeries sqrt_zero_minus;
};

// Delta alone (exact); working-order independent.
PuiseuxSeries kernel_discriminant(const Model& model);

// Full factorization, all series accurate through t-order `order`.
KernelFactorization factor_discriminant(const Model& model, int order);

}  // namespace qwalk
