#include "kernel_roots.hpp"

#include "errors.hpp"

namespace qwalk {
namespace {

// c0 + c1 t + c2 t^2 as an exact x-free series.
PuiseuxSeries t_poly(const Rational& c0, const Rational& c1, const Rational& c2 = 0) {
    PuiseuxSeries out = PuiseuxSeries::constant(c0);
    out = out + PuiseuxSeries::monomial(c1, 0, 1);
    out = out + PuiseuxSeries::monomial(c2, 0, 2);
    return out;
}

// The admissible (positive-valuation) root of q0 + q1 x + q2 x^2 = 0, or the
// reason there is none. Both quadratic-formula branches are formed with exact
// series arithmetic; exactly one can converge as t -> 0.
struct BranchResult {
    std::optional<PuiseuxSeries> root;
    std::string reason;
};

BranchResult admissible_branch(const PuiseuxSeries& q0, const PuiseuxSeries& q1,
                               const PuiseuxSeries& q2, int work_acc) {
    std::vector<PuiseuxSeries> candidates;
    try {
        if (q2.is_zero_value()) {
            if (q1.is_zero_value()) return {std::nullopt, "factor collapses to a constant"};
            candidates.push_back((-q0).truncated_order(work_acc) * q1.truncated_order(work_acc).inverted());
        } else {
            PuiseuxSeries disc = q1 * q1 - q0 * q2.scaled(4);
            PuiseuxSeries inv_lead = q2.scaled(2).truncated_order(work_acc).inverted();
            if (disc.is_zero_value()) {
                candidates.push_back((-q1) * inv_lead);
            } else {
                int val = *disc.valuation();  // ram 1: plain t-order
                PuiseuxSeries s = (val % 2 != 0) ? disc.re_rammed(2).truncated_order(work_acc).sqrt()
                                                 : disc.truncated_order(work_acc).sqrt();
                candidates.push_back(((-q1) - s) * inv_lead);
                candidates.push_back(((-q1) + s) * inv_lead);
            }
        }
    } catch (const Error& e) {
        return {std::nullopt, std::string("no rational power-series branch: ") + e.what()};
    }

    std::optional<PuiseuxSeries> chosen;
    for (const PuiseuxSeries& r : candidates) {
        auto val = r.valuation();
        if (!val || *val <= 0) continue;
        if (chosen) raise(ErrorCode::DegenerateRegime, "two convergent branches of one kernel factor");
        chosen = r.ram_normalized();
    }
    if (!chosen) return {std::nullopt, "no branch converges at t=0"};
    return {chosen, ""};
}

}  // namespace

std::vector<KernelFactor> boundary_kernel_factors(const Model& model) {
    const Rational a = model.w.a;
    const Rational b = model.w.b;
    std::vector<KernelFactor> out;
    if (model.kind == ModelKind::ReverseKreweras) {
        out.push_back({1, false, t_poly(0, 0, a * a), PuiseuxSeries::constant(1 - a),
                       t_poly(0, a * a - a)});
        out.push_back({3, false, t_poly(0, 0, 2 * a * b), PuiseuxSeries::constant(2 - a - b),
                       t_poly(0, 2 * a * b - a - b)});
        out.push_back({5, true, t_poly(0, a * a - a), PuiseuxSeries::constant(1 - a),
                       t_poly(0, 0, a * a)});
        out.push_back({7, true, t_poly(0, b * b - b), PuiseuxSeries::constant(1 - b),
                       t_poly(0, 0, b * b)});
    } else {
        out.push_back({1, false, t_poly(0, a - a * a), PuiseuxSeries::constant(a - 1),
                       t_poly(0, 0, -a * a)});
        out.push_back({3, false, t_poly(0, b - b * b), PuiseuxSeries::constant(b - 1),
                       t_poly(0, 0, -b * b)});
        out.push_back({5, false, t_poly(0, a + b - 2 * a * b), PuiseuxSeries::constant(a + b - 2),
                       t_poly(0, 0, -2 * a * b)});
        out.push_back({7, true, t_poly(0, 0, a * a), PuiseuxSeries::constant(1 - a),
                       t_poly(0, a * a - a)});
        out.push_back({9, true, t_poly(0, 0, b * b), PuiseuxSeries::constant(1 - b),
                       t_poly(0, b * b - b)});
    }
    return out;
}

std::vector<KernelSlot> kernel_root_slots(const Model& model, int want_order) {
    const int work = want_order + 8;
    std::vector<KernelSlot> slots;
    for (const KernelFactor& f : boundary_kernel_factors(model)) {
        KernelSlot slot;
        slot.label = f.slot;
        slot.flipped = f.flipped;
        BranchResult br = admissible_branch(f.q0, f.q1, f.q2, work);
        if (!br.root) {
            slot.degenerate_reason = br.reason;
            slots.push_back(std::move(slot));
            continue;
        }
        const PuiseuxSeries& r = *br.root;
        PuiseuxSeries residual = f.q0 + f.q1 * r + f.q2 * r * r;
        if (!residual.is_zero_value() && residual.truncated_order(want_order).is_zero_value() == false)
            raise(ErrorCode::KernelNotCancelled, "kernel factor residual at its own root");
        slot.root = r.truncated_order(want_order).ram_normalized();
        slots.push_back(std::move(slot));
    }
    return slots;
}

}  // namespace qwalk
