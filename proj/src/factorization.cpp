#include "factorization.hpp"

#include <stdexcept>

#include "errors.hpp"

namespace qwalk {

PuiseuxSeries kernel_discriminant(const Model& model) {
    PuiseuxSeries t = PuiseuxSeries::monomial(Rational(1), 0, 1, 1);
    PuiseuxSeries head =
        PuiseuxSeries::constant(Rational(1)) - PuiseuxSeries::from_x_poly(model.sect_zero) * t;
    PuiseuxSeries cross =
        PuiseuxSeries::from_x_poly(model.sect_minus * model.sect_plus).scaled(Rational(4));
    return head * head - cross * t * t;
}

KernelFactorization factor_discriminant(const Model& model, int order) {
    KernelFactorization out;
    out.delta = kernel_discriminant(model);
    int work = order + 8;
    out.roots = puiseux_roots(out.delta, work);

    PuiseuxSeries one = PuiseuxSeries::constant(Rational(1));
    PuiseuxSeries x_bar = PuiseuxSeries::monomial(Rational(1), -1, 0, 1);
    PuiseuxSeries x_mono = PuiseuxSeries::monomial(Rational(1), 1, 0, 1);

    out.delta_minus = one;
    for (const auto& root : out.roots.finite)
        out.delta_minus = out.delta_minus * (one - x_bar * root);
    out.delta_plus = one;
    for (const auto& root : out.roots.divergent)
        out.delta_plus = out.delta_plus * (one - x_mono * root.inverted());

    out.delta_zero = out.delta * out.delta_plus.inverted() * out.delta_minus.inverted();
    for (const auto& [key, poly] : out.delta_zero.terms())
        if (poly.min_exp() != 0 || poly.max_exp() != 0)
            throw std::logic_error("x-free factor of the discriminant is not x-free");

    PuiseuxSeries recombined = out.delta_zero * out.delta_plus * out.delta_minus;
    if (!recombined.agrees_with(out.delta, order))
        throw std::logic_error("discriminant factor product check failed");

    out.inv_sqrt_plus = out.delta_plus.sqrt().inverted();
    out.sqrt_zero_minus = (out.delta_zero * out.delta_minus).sqrt();
    if (out.inv_sqrt_plus.acc() < order || out.sqrt_zero_minus.acc() < order)
        raise(ErrorCode::PrecisionExhausted,
              "discriminant factorization lost too much accuracy");
    return out;
}

}  // namespace qwalk
