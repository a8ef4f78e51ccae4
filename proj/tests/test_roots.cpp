// Tests for Puiseux root finding, the discriminant factorization, and the
// boundary kernel root slots, pinned against independently known expansions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "errors.hpp"
#include "factorization.hpp"
#include "kernel_roots.hpp"
#include "model.hpp"
#include "newton_puiseux.hpp"
#include "puiseux.hpp"

using namespace qwalk;

namespace {

Rational rat(long num, long den = 1) {
    Rational r(static_cast<int>(num));
    r /= Rational(static_cast<int>(den));
    return r;
}

// Builds sum of coeff * t^(key/ram) terms, truncated at `acc` (key units).
PuiseuxSeries build(std::vector<std::pair<int, Rational>> terms, int acc, int ram) {
    PuiseuxSeries s = PuiseuxSeries::zero_with_acc(acc, ram);
    for (const auto& [key, coeff] : terms)
        s = s + PuiseuxSeries::monomial(coeff, 0, key, ram).truncated(acc);
    return s;
}

// Evaluates an x-Laurent-coefficient polynomial at a scalar series root.
PuiseuxSeries eval_at_root(const PuiseuxSeries& poly_in_x, const PuiseuxSeries& root) {
    PuiseuxSeries x1 = root.is_exact() ? root.truncated(root.acc()) : root;
    std::map<int, PuiseuxSeries> powers;
    powers[0] = PuiseuxSeries::constant(rat(1));
    auto power = [&](int e) {
        auto it = powers.find(e);
        if (it != powers.end()) return it->second;
        PuiseuxSeries base = e > 0 ? x1 : x1.inverted();
        PuiseuxSeries acc = powers[0];
        for (int k = 0; k < std::abs(e); ++k) acc = acc * base;
        powers[e] = acc;
        return acc;
    };
    PuiseuxSeries out = PuiseuxSeries::zero_with_acc(x1.acc(), x1.ram());
    for (const auto& [key, lp] : poly_in_x.terms())
        for (const auto& [e, c] : lp.terms())
            out = out + power(e).scaled(c) *
                            PuiseuxSeries::monomial(rat(1), 0, key, poly_in_x.ram());
    return out;
}

bool matches(const PuiseuxSeries& root, const PuiseuxSeries& expect, int through_num,
             int through_den) {
    return root.agrees_with(expect, through_num, through_den);
}

}  // namespace

TEST_CASE("roots of x^2 - t are the two square-root branches") {
    PuiseuxSeries p = PuiseuxSeries::monomial(rat(1), 2, 0) - PuiseuxSeries::monomial(rat(1), 0, 1);
    RootSplit roots = puiseux_roots(p, 10);
    REQUIRE(roots.finite.size() == 2);
    CHECK(roots.divergent.empty());
    CHECK(roots.degree == 2);
    for (const PuiseuxSeries& r : roots.finite) {
        CHECK(r.ram() == 2);
        CHECK((r * r - PuiseuxSeries::monomial(rat(1), 0, 1).truncated(r.acc() / 2))
                  .truncated(8)
                  .is_zero_value());
    }
    // Deterministic order: negative branch first.
    CHECK(roots.finite[0].coeff(1).coeff(0) == rat(-1));
    CHECK(roots.finite[1].coeff(1).coeff(0) == rat(1));
}

TEST_CASE("irrational leading coefficients are reported, not approximated") {
    // x^2 - 2 t^2: leading coefficients would be +-sqrt(2).
    PuiseuxSeries p = PuiseuxSeries::monomial(rat(1), 2, 0) - PuiseuxSeries::monomial(rat(2), 0, 2);
    try {
        puiseux_roots(p, 8);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonRationalLeadingCoefficient);
    }
}

TEST_CASE("reverse-model discriminant and its printed roots") {
    for (const Weights& w : {Weights{rat(2), rat(3), rat(5)}, Weights{rat(1), rat(1), rat(1)}}) {
        Model m = make_model(ModelKind::ReverseKreweras, w);
        // Delta = 1 - 2tx + t^2 x^2 - 4 t^2 / x, independent of the weights.
        PuiseuxSeries delta = kernel_discriminant(m);
        PuiseuxSeries expect = PuiseuxSeries::constant(rat(1)) -
                               PuiseuxSeries::monomial(rat(2), 1, 1) +
                               PuiseuxSeries::monomial(rat(1), 2, 2) -
                               PuiseuxSeries::monomial(rat(4), -1, 2);
        CHECK(delta == expect);

        KernelFactorization fact = factor_discriminant(m, 11);
        REQUIRE(fact.roots.finite.size() == 1);
        REQUIRE(fact.roots.divergent.size() == 2);
        CHECK(fact.roots.degree == 3);

        PuiseuxSeries x1 = build({{2, rat(4)}, {5, rat(32)}, {8, rat(448)}}, 10, 1);
        CHECK(matches(fact.roots.finite[0], x1, 10, 1));

        // Divergent pair: conjugate half-integer expansions.
        PuiseuxSeries x2 = build({{-2, rat(1)},
                                  {1, rat(2)},
                                  {4, rat(-2)},
                                  {7, rat(5)},
                                  {10, rat(-16)},
                                  {13, rat(231, 4)},
                                  {16, rat(-224)},
                                  {19, rat(7293, 8)}},
                                 20, 2);
        PuiseuxSeries x3 = build({{-2, rat(1)},
                                  {1, rat(-2)},
                                  {4, rat(-2)},
                                  {7, rat(-5)},
                                  {10, rat(-16)},
                                  {13, rat(-231, 4)},
                                  {16, rat(-224)},
                                  {19, rat(-7293, 8)}},
                                 20, 2);
        bool found2 = matches(fact.roots.divergent[0], x2, 19, 2) ||
                      matches(fact.roots.divergent[1], x2, 19, 2);
        bool found3 = matches(fact.roots.divergent[0], x3, 19, 2) ||
                      matches(fact.roots.divergent[1], x3, 19, 2);
        CHECK(found2);
        CHECK(found3);

        // Every root annihilates Delta.
        for (const PuiseuxSeries& r : fact.roots.finite)
            CHECK(eval_at_root(delta, r).truncated_order(8).is_zero_value());
        for (const PuiseuxSeries& r : fact.roots.divergent)
            CHECK(eval_at_root(delta, r).truncated_order(8).is_zero_value());
    }
}

TEST_CASE("direct-model discriminant and its printed roots") {
    Model m = make_model(ModelKind::Kreweras, Weights{rat(2), rat(3), rat(5)});
    // Delta = (1 - t/x)^2 - 4 t^2 x.
    PuiseuxSeries delta = kernel_discriminant(m);
    PuiseuxSeries expect = PuiseuxSeries::constant(rat(1)) -
                           PuiseuxSeries::monomial(rat(2), -1, 1) +
                           PuiseuxSeries::monomial(rat(1), -2, 2) -
                           PuiseuxSeries::monomial(rat(4), 1, 2);
    CHECK(delta == expect);

    KernelFactorization fact = factor_discriminant(m, 12);
    REQUIRE(fact.roots.finite.size() == 2);
    REQUIRE(fact.roots.divergent.size() == 1);
    CHECK(fact.roots.degree == 3);

    PuiseuxSeries x1 = build({{2, rat(1)},
                              {5, rat(2)},
                              {8, rat(6)},
                              {11, rat(21)},
                              {14, rat(80)},
                              {17, rat(1287, 4)},
                              {20, rat(1344)}},
                             21, 2);
    PuiseuxSeries x2 = build({{2, rat(1)},
                              {5, rat(-2)},
                              {8, rat(6)},
                              {11, rat(-21)},
                              {14, rat(80)},
                              {17, rat(-1287, 4)},
                              {20, rat(1344)}},
                             21, 2);
    bool found1 = matches(fact.roots.finite[0], x1, 20, 2) ||
                  matches(fact.roots.finite[1], x1, 20, 2);
    bool found2 = matches(fact.roots.finite[0], x2, 20, 2) ||
                  matches(fact.roots.finite[1], x2, 20, 2);
    CHECK(found1);
    CHECK(found2);

    PuiseuxSeries x3 = build(
        {{-2, rat(1, 4)}, {1, rat(-2)}, {4, rat(-12)}, {7, rat(-160)}, {10, rat(-2688)}}, 10,
        1);
    CHECK(matches(fact.roots.divergent[0], x3, 10, 1));

    for (const PuiseuxSeries& r : fact.roots.finite)
        CHECK(eval_at_root(delta, r).truncated_order(8).is_zero_value());
    for (const PuiseuxSeries& r : fact.roots.divergent)
        CHECK(eval_at_root(delta, r).truncated_order(8).is_zero_value());
}

TEST_CASE("canonical factorization identities and printed carriers") {
    SUBCASE("reverse model") {
        Model m = make_model(ModelKind::ReverseKreweras, Weights{rat(2), rat(3), rat(5)});
        KernelFactorization fact = factor_discriminant(m, 12);

        PuiseuxSeries prod = fact.delta_zero * fact.delta_plus * fact.delta_minus;
        CHECK((prod - fact.delta).truncated_order(10).is_zero_value());

        CHECK((fact.inv_sqrt_plus * fact.inv_sqrt_plus * fact.delta_plus -
               PuiseuxSeries::constant(rat(1)))
                  .truncated_order(10)
                  .is_zero_value());
        CHECK((fact.sqrt_zero_minus * fact.sqrt_zero_minus - fact.delta_zero * fact.delta_minus)
                  .truncated_order(10)
                  .is_zero_value());

        // 1/sqrt(DeltaPlus) = 1 + tx + t^2x^2 + t^3x^3 + t^4(6x + x^4) + ...
        const PuiseuxSeries& isp = fact.inv_sqrt_plus;
        CHECK(isp.coeff_q(0, 1).coeff(0) == rat(1));
        CHECK(isp.coeff_q(1, 1).coeff(1) == rat(1));
        CHECK(isp.coeff_q(2, 1).coeff(2) == rat(1));
        CHECK(isp.coeff_q(3, 1).coeff(3) == rat(1));
        CHECK(isp.coeff_q(4, 1).coeff(1) == rat(6));
        CHECK(isp.coeff_q(4, 1).coeff(4) == rat(1));
        CHECK(isp.coeff_q(1, 1).terms().size() == 1);
        CHECK(isp.coeff_q(4, 1).terms().size() == 2);

        // sqrt(Delta0 DeltaMinus) = 1 - 2t^2/x - 4t^3 - 2t^4/x^2 + ...
        const PuiseuxSeries& szm = fact.sqrt_zero_minus;
        CHECK(szm.coeff_q(0, 1).coeff(0) == rat(1));
        CHECK(szm.coeff_q(1, 1).is_zero());
        CHECK(szm.coeff_q(2, 1).coeff(-1) == rat(-2));
        CHECK(szm.coeff_q(3, 1).coeff(0) == rat(-4));
        CHECK(szm.coeff_q(4, 1).coeff(-2) == rat(-2));

        // Delta0 = t^2 X2 X3, DeltaMinus = 1 - X1/x, DeltaPlus = (1-x/X2)(1-x/X3).
        const PuiseuxSeries& x1 = fact.roots.finite[0];
        const PuiseuxSeries& d2 = fact.roots.divergent[0];
        const PuiseuxSeries& d3 = fact.roots.divergent[1];
        PuiseuxSeries t2 = PuiseuxSeries::monomial(rat(1), 0, 2);
        CHECK((fact.delta_zero - t2 * d2 * d3).truncated_order(9).is_zero_value());
        PuiseuxSeries xbar = PuiseuxSeries::monomial(rat(1), -1, 0);
        CHECK((fact.delta_minus - (PuiseuxSeries::constant(rat(1)) - xbar * x1))
                  .truncated_order(9)
                  .is_zero_value());
        PuiseuxSeries x = PuiseuxSeries::monomial(rat(1), 1, 0);
        PuiseuxSeries dp = (PuiseuxSeries::constant(rat(1)) - x * d2.inverted()) *
                           (PuiseuxSeries::constant(rat(1)) - x * d3.inverted());
        CHECK((fact.delta_plus - dp).truncated_order(9).is_zero_value());
    }

    SUBCASE("direct model") {
        Model m = make_model(ModelKind::Kreweras, Weights{rat(2), rat(3), rat(5)});
        KernelFactorization fact = factor_discriminant(m, 12);

        CHECK((fact.delta_zero * fact.delta_plus * fact.delta_minus - fact.delta)
                  .truncated_order(10)
                  .is_zero_value());
        CHECK((fact.inv_sqrt_plus * fact.inv_sqrt_plus * fact.delta_plus -
               PuiseuxSeries::constant(rat(1)))
                  .truncated_order(10)
                  .is_zero_value());
        CHECK((fact.sqrt_zero_minus * fact.sqrt_zero_minus - fact.delta_zero * fact.delta_minus)
                  .truncated_order(10)
                  .is_zero_value());

        // 1/sqrt(DeltaPlus) = 1 + 2t^2x + 6t^4x^2 + 16t^5x + ...
        const PuiseuxSeries& isp = fact.inv_sqrt_plus;
        CHECK(isp.coeff_q(0, 1).coeff(0) == rat(1));
        CHECK(isp.coeff_q(1, 1).is_zero());
        CHECK(isp.coeff_q(2, 1).coeff(1) == rat(2));
        CHECK(isp.coeff_q(3, 1).is_zero());
        CHECK(isp.coeff_q(4, 1).coeff(2) == rat(6));
        CHECK(isp.coeff_q(5, 1).coeff(1) == rat(16));

        // sqrt(Delta0 DeltaMinus) = 1 - t/x - 4t^3 - 2t^4/x - 2t^5/x^2 + ...
        const PuiseuxSeries& szm = fact.sqrt_zero_minus;
        CHECK(szm.coeff_q(0, 1).coeff(0) == rat(1));
        CHECK(szm.coeff_q(1, 1).coeff(-1) == rat(-1));
        CHECK(szm.coeff_q(2, 1).is_zero());
        CHECK(szm.coeff_q(3, 1).coeff(0) == rat(-4));
        CHECK(szm.coeff_q(4, 1).coeff(-1) == rat(-2));
        CHECK(szm.coeff_q(5, 1).coeff(-2) == rat(-2));

        // Delta0 = 4 t^2 X3, DeltaPlus = 1 - x/X3, DeltaMinus = (1-X1/x)(1-X2/x).
        const PuiseuxSeries& f1 = fact.roots.finite[0];
        const PuiseuxSeries& f2 = fact.roots.finite[1];
        const PuiseuxSeries& d3 = fact.roots.divergent[0];
        PuiseuxSeries t2 = PuiseuxSeries::monomial(rat(4), 0, 2);
        CHECK((fact.delta_zero - t2 * d3).truncated_order(9).is_zero_value());
        PuiseuxSeries x = PuiseuxSeries::monomial(rat(1), 1, 0);
        CHECK((fact.delta_plus - (PuiseuxSeries::constant(rat(1)) - x * d3.inverted()))
                  .truncated_order(9)
                  .is_zero_value());
        PuiseuxSeries xbar = PuiseuxSeries::monomial(rat(1), -1, 0);
        PuiseuxSeries dm = (PuiseuxSeries::constant(rat(1)) - xbar * f1) *
                           (PuiseuxSeries::constant(rat(1)) - xbar * f2);
        CHECK((fact.delta_minus - dm).truncated_order(9).is_zero_value());
    }
}

TEST_CASE("boundary kernel root slots annihilate their factors at every weight point") {
    const std::vector<Weights> points = {
        {rat(2), rat(3), rat(5)},       {rat(1, 2), rat(3), rat(2)},
        {rat(3), rat(2), rat(5)},       {rat(2), rat(2), rat(7)},
        {rat(3), rat(1), rat(2)},       {rat(1), rat(3), rat(2)},
        {rat(3, 2), rat(1, 2), rat(1)}, {rat(1), rat(1), rat(1)},
    };
    for (ModelKind kind : {ModelKind::ReverseKreweras, ModelKind::Kreweras}) {
        for (const Weights& w : points) {
            Model m = make_model(kind, w);
            std::vector<KernelSlot> slots = kernel_root_slots(m, 12);
            std::vector<KernelFactor> factors = boundary_kernel_factors(m);
            REQUIRE(slots.size() == factors.size());
            for (size_t s = 0; s < slots.size(); ++s) {
                CHECK(slots[s].label == factors[s].slot);
                CHECK(slots[s].flipped == factors[s].flipped);
                if (!slots[s].root) {
                    CHECK(!slots[s].degenerate_reason.empty());
                    continue;
                }
                const PuiseuxSeries& r = *slots[s].root;
                CHECK(r.valuation().value() > 0);
                CHECK(r.ram() <= 2);
                PuiseuxSeries value = factors[s].q0.truncated_order(12) +
                                      factors[s].q1.truncated_order(12) * r +
                                      factors[s].q2.truncated_order(12) * r * r;
                CHECK(value.truncated_order(8).is_zero_value());
            }
        }
    }
}

TEST_CASE("documented slot example: reverse model at a=2 gives 4t^2 + O(t^5)") {
    Model m = make_model(ModelKind::ReverseKreweras, Weights{rat(2), rat(3), rat(5)});
    std::vector<KernelSlot> slots = kernel_root_slots(m, 12);
    REQUIRE(!slots.empty());
    REQUIRE(slots[0].label == 1);
    REQUIRE(slots[0].root.has_value());
    PuiseuxSeries r = slots[0].root->ram_normalized();
    CHECK(r.ram() == 1);
    CHECK(r.valuation().value() == 2);
    CHECK(r.coeff_q(2, 1).coeff(0) == rat(4));
    CHECK(r.coeff_q(3, 1).is_zero());
    CHECK(r.coeff_q(4, 1).is_zero());
}

TEST_CASE("strata weights degrade gracefully to degenerate slots") {
    // At a+b=2 the mixed factor loses its rational root branch.
    Model m = make_model(ModelKind::ReverseKreweras, Weights{rat(3, 2), rat(1, 2), rat(1)});
    std::vector<KernelSlot> slots = kernel_root_slots(m, 10);
    int degenerate = 0;
    for (const KernelSlot& s : slots)
        if (!s.root) {
            ++degenerate;
            CHECK(!s.degenerate_reason.empty());
        }
    CHECK(degenerate >= 1);

    // At b=1 the pure-b factors collapse; the slots must report why.
    Model m2 = make_model(ModelKind::ReverseKreweras, Weights{rat(3), rat(1), rat(2)});
    std::vector<KernelSlot> slots2 = kernel_root_slots(m2, 10);
    int degenerate2 = 0;
    for (const KernelSlot& s : slots2)
        if (!s.root) ++degenerate2;
    CHECK(degenerate2 >= 1);
}
