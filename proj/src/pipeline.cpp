// Implementation of the solving chain declared in pipeline.hpp.
#include "pipeline.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "errors.hpp"
#include "extraction.hpp"
#include "factorization.hpp"
#include "kernel_roots.hpp"
#include "orbit.hpp"

namespace qwalk {
namespace {

// ---------------------------------------------------------------------------
// Series utilities.

PuiseuxSeries t_power(const Rational& coeff, int t_deg) {
    return PuiseuxSeries::monomial(coeff, 0, t_deg);
}

PuiseuxSeries series_pow(const PuiseuxSeries& base, int n) {
    PuiseuxSeries out = PuiseuxSeries::constant(Rational(1));
    for (int i = 0; i < n; ++i) out = out * base;
    return out;
}

// Minimum x-exponent over the kept coefficients; nullopt when zero-valued.
std::optional<int> x_valuation(const PuiseuxSeries& s) {
    std::optional<int> v;
    for (const auto& [key, poly] : s.terms()) {
        (void)key;
        if (poly.is_zero()) continue;
        if (!v || poly.min_exp() < *v) v = poly.min_exp();
    }
    return v;
}

// The x^i coefficient of every kept t-order, as an x-free series.
PuiseuxSeries series_x_slice(const PuiseuxSeries& s, int i) {
    PuiseuxSeries out = PuiseuxSeries::zero_with_acc(s.acc(), s.ram());
    for (const auto& [key, poly] : s.terms()) {
        const Rational& c = poly.coeff(i);
        if (c != 0) out = out + PuiseuxSeries::monomial(c, 0, key, s.ram());
    }
    return out;
}

// Exact Laurent-polynomial division; nullopt when not exactly divisible.
std::optional<LaurentPoly> laurent_divide_exact(const LaurentPoly& num,
                                                const LaurentPoly& den) {
    if (den.is_zero()) return std::nullopt;
    LaurentPoly quot;
    if (num.is_zero()) return quot;
    const int dmax = den.max_exp();
    const Rational dlead = den.coeff(dmax);
    // An exact quotient's lowest exponent is pinned by the factorization of
    // the lowest terms, which bounds the long division from below.
    const int low_q = num.min_exp() - den.min_exp();
    LaurentPoly rem = num;
    while (!rem.is_zero()) {
        const int qe = rem.max_exp() - dmax;
        if (qe < low_q) return std::nullopt;
        const Rational qc = rem.coeff(rem.max_exp()) / dlead;
        quot.add_term(qe, qc);
        rem = rem - den * LaurentPoly::monomial(qc, qe);
    }
    return quot;
}

// Order-by-order division num/den of t-series with Laurent-polynomial
// coefficients. The denominator's leading t-coefficient is a genuine
// polynomial in x (not a monomial), so plain series inversion does not apply;
// instead each t-order is solved with an explicit exact-divisibility check.
PuiseuxSeries series_divide(const PuiseuxSeries& num_in, const PuiseuxSeries& den_in,
                            const std::string& what) {
    PuiseuxSeries num = num_in, den = den_in;
    const int r = std::lcm(num.ram(), den.ram());
    if (num.ram() != r) num = num.re_rammed(r / num.ram());
    if (den.ram() != r) den = den.re_rammed(r / den.ram());
    const auto dval = den.valuation();
    if (!dval) raise(ErrorCode::DivisibilityFailure, what + ": denominator is zero-valued");
    const int v = *dval;
    const LaurentPoly lead = den.coeff(v);
    if (num.is_exact() && den.is_exact())
        raise(ErrorCode::DivisibilityFailure, what + ": unbounded exact division");
    const long long shared = std::min<long long>(num.acc(), den.acc());
    const long long out_acc_ll = shared - v;
    if (out_acc_ll < 0)
        raise(ErrorCode::PrecisionExhausted, what + ": no accurate orders left after division");
    const int out_acc = static_cast<int>(std::min<long long>(out_acc_ll, PuiseuxSeries::kExact - 1));

    PuiseuxSeries out = PuiseuxSeries::zero_with_acc(out_acc, r);
    const auto nval = num.valuation();
    if (!nval) return out.ram_normalized();
    std::map<int, LaurentPoly> quot;
    for (int m = *nval - v; m <= out_acc; ++m) {
        LaurentPoly resid = num.coeff(m + v);
        for (const auto& [mk, qc] : quot) resid = resid - den.coeff(v + (m - mk)) * qc;
        if (resid.is_zero()) continue;
        auto qc = laurent_divide_exact(resid, lead);
        if (!qc)
            raise(ErrorCode::DivisibilityFailure,
                  what + ": residual at series order " + std::to_string(m + v) + "/" +
                      std::to_string(r) + " is not divisible by the leading coefficient");
        quot.emplace(m, std::move(*qc));
    }
    for (const auto& [mk, qc] : quot)
        out = out + PuiseuxSeries::monomial(Rational(1), 0, mk, r) * PuiseuxSeries::from_x_poly(qc);
    return out.ram_normalized();
}

// ---------------------------------------------------------------------------
// Pair arithmetic for values of the shape  even + odd * sqrt(Delta).

struct SeriesPair {
    PuiseuxSeries even, odd;
};

SeriesPair pair_mul(const SeriesPair& p, const SeriesPair& q, const PuiseuxSeries& delta) {
    return {p.even * q.even + p.odd * q.odd * delta, p.even * q.odd + p.odd * q.even};
}

SeriesPair pair_pow(const SeriesPair& base, int n, const PuiseuxSeries& delta) {
    SeriesPair out{PuiseuxSeries::constant(Rational(1)), PuiseuxSeries()};
    for (int i = 0; i < n; ++i) out = pair_mul(out, base, delta);
    return out;
}

// ---------------------------------------------------------------------------
// Tag helpers.

const UnknownTag kQ00 = UnknownTag::point(0, 0);
const UnknownTag kLY0 = UnknownTag::line_y(0);
const UnknownTag kLX0 = UnknownTag::line_x(0);
const UnknownTag kD0 = UnknownTag::diag(0);
const UnknownTag kD1 = UnknownTag::diag(1);

PuiseuxSeries coeff_or_zero(const LinearForm& form, const UnknownTag& tag) {
    return form.has(tag) ? form.coeff(tag) : PuiseuxSeries();
}

// Smallest x-exponent stored anywhere in `s` (0 for an identically zero value).
int min_x_exponent(const PuiseuxSeries& s) {
    int m = 0;
    bool seen = false;
    for (const auto& [key, poly] : s.terms()) {
        (void)key;
        if (poly.is_zero()) continue;
        m = seen ? std::min(m, poly.min_exp()) : poly.min_exp();
        seen = true;
    }
    return m;
}

int min_x_exponent(const LinearForm& form) {
    std::optional<int> m;
    auto visit = [&](const PuiseuxSeries& s) {
        if (s.is_zero_value()) return;
        const int v = min_x_exponent(s);
        m = m ? std::min(*m, v) : v;
    };
    visit(form.known());
    for (const auto& [tag, c] : form.terms()) {
        (void)tag;
        visit(c);
    }
    return m.value_or(0);
}

// Checks that the only function tags carried by `form` are the allowed ones
// (point tags are scalar unknowns and always acceptable).
void require_functions_within(const LinearForm& form, const std::set<UnknownTag>& allowed,
                              const std::string& where) {
    for (const auto& [tag, c] : form.terms()) {
        if (c.is_zero_value()) continue;
        if (tag.is_function() && allowed.count(tag) == 0)
            raise(ErrorCode::UnknownSetMismatch, where + ": unexpected term " + tag.str());
    }
}

std::set<UnknownTag> expected_corners(const Model& model) {
    if (model.kind == ModelKind::ReverseKreweras)
        return {UnknownTag::point(0, 0), UnknownTag::point(0, 1), UnknownTag::point(1, 0)};
    return {UnknownTag::point(0, 0), UnknownTag::point(1, 0), UnknownTag::point(2, 0),
            UnknownTag::point(3, 0), UnknownTag::point(4, 0)};
}

// ---------------------------------------------------------------------------
// Candidate equation sets.

std::vector<std::vector<int>> combinations(const std::vector<int>& labels, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > static_cast<int>(labels.size())) return out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> combo(k);
        for (int i = 0; i < k; ++i) combo[i] = labels[idx[i]];
        out.push_back(std::move(combo));
        int i = k - 1;
        while (i >= 0 && idx[i] == static_cast<int>(labels.size()) - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// All size-k label sets in scan order: the documented preference sequence
// first (when applicable), then ascending lexicographic order.
std::vector<std::vector<int>> candidate_sets(const Model& model, const std::vector<int>& available,
                                             int k) {
    std::vector<std::vector<int>> preferred;
    if (model.kind == ModelKind::ReverseKreweras && k == 3)
        preferred = {{1, 3, 7}, {1, 5, 7}, {3, 5, 7}, {0, 1, 7}, {0, 5, 7}};
    if (model.kind == ModelKind::Kreweras && k == 4) preferred = {{1, 3, 5, 7}};
    const std::set<int> have(available.begin(), available.end());
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    auto push = [&](const std::vector<int>& s) {
        if (seen.insert(s).second) out.push_back(s);
    };
    for (const auto& p : preferred) {
        bool ok = true;
        for (int lab : p) ok = ok && have.count(lab) != 0;
        if (ok) push(p);
    }
    for (auto& c : combinations(available, k)) push(c);
    return out;
}

std::string set_name(const std::string& prefix, const std::vector<int>& labels) {
    std::ostringstream os;
    os << prefix << "[";
    for (size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    os << "]";
    return os.str();
}

DeterminantDiagnostic make_diag(const std::string& name, const std::vector<int>& labels,
                                const PuiseuxSeries& det) {
    DeterminantDiagnostic d;
    d.name = name;
    d.labels = labels;
    const PuiseuxSeries n = det.ram_normalized();
    const auto v = n.valuation();
    if (!v) {
        d.vanishes = true;
        return d;
    }
    d.vanishes = false;
    d.leading_order = *v / n.ram();
    const LaurentPoly& lead = n.coeff(*v);
    d.leading_coeff = lead.coeff(lead.min_exp());
    return d;
}

// Per-equation normalization: the scalar equations are only defined up to a
// monomial unit, and the reference leading coefficients for the determinant
// reports fix one particular choice. The table rescales each root equation to
// that reference normalization (calibrated once against the reported closed
// forms; identity until then).
PuiseuxSeries row_calibration(const Model& model, int label) {
    (void)model;
    (void)label;
    return PuiseuxSeries::constant(Rational(1));
}

// ---------------------------------------------------------------------------
// Core solver: one attempt at a fixed working order.

struct CoreOptions {
    bool want_q0y = true;
    bool want_qxy = true;
    bool allow_swap_fallback = true;  // permit the reflected fallback for Q(0,y)
};

Solution solve_entry(const Model& model, int order, std::optional<int> working,
                     const CoreOptions& opts);

class CoreSolver {
  public:
    CoreSolver(const Model& model, int order, int working, const CoreOptions& opts)
        : m_(model), n_(order), w_(working), opts_(opts), bound_(4 * working + 64) {}

    Solution run();

  private:
    void build_boundary_exchange();
    LinearForm full_orbit_rhs_form(const OrbitSumParts& fo);
    void build_master();
    void pair_eliminate(const LinearForm& rel, const UnknownTag& tag);
    void pair_strip_monomial();
    void split_master();
    void build_pool();
    void harvest_slices(const LinearForm& side, const UnknownTag& tag, int label_base);
    void inject_origin(Solution& sol);
    LinearForm pool_row(int label) const;
    void record_documented_determinants(Solution& sol, const std::vector<UnknownTag>& unknowns);
    void solve_corners(Solution& sol);
    void back_substitute(Solution& sol);
    void recover_y_axis(Solution& sol);
    void assemble_full(Solution& sol);
    void check_series(const PuiseuxSeries& s, const std::string& name) const;

    const Model& m_;
    const int n_;
    const int w_;
    const CoreOptions opts_;
    const int bound_;

    OrbitSystem sys_;
    KernelFactorization fact_;
    PuiseuxSeries isp_, szm_, delta_exact_;
    LinearForm f_plus_, f_neg_;          // boundary-exchange relations (x^> / x^< parts)
    LinearForm master_even_, master_odd_;  // master relation as even + odd*sqrt(Delta)
    LinearForm pos_, h0_, negf_;         // split master; negf_ already flipped x -> 1/x
    std::vector<KernelSlot> slots_;
    std::vector<std::pair<int, LinearForm>> pool_;
    std::map<UnknownTag, PuiseuxSeries> solved_;
    std::map<std::vector<int>, PuiseuxSeries> det_cache_;
    std::string notes_;
};

Solution CoreSolver::run() {
    Solution sol;
    sol.kind = m_.kind;
    sol.w = m_.w;
    sol.order = n_;
    sol.working_order = w_;

    sys_ = build_orbit_system(m_);
    verify_orbit_system(m_, sys_);
    fact_ = factor_discriminant(m_, w_ + 8);
    delta_exact_ = fact_.delta;
    isp_ = fact_.inv_sqrt_plus.truncated_order(w_).ram_normalized();
    szm_ = fact_.sqrt_zero_minus.truncated_order(w_).ram_normalized();

    build_boundary_exchange();
    build_master();
    split_master();
    build_pool();
    if (m_.kind == ModelKind::Kreweras) inject_origin(sol);
    solve_corners(sol);
    back_substitute(sol);
    if (opts_.want_q0y) recover_y_axis(sol);
    if (opts_.want_qxy) assemble_full(sol);
    sol.notes += notes_;
    return sol;
}

// Step 2: the full-orbit sum at [y^0], reduced and split at x^0. The
// nonnegative part links Q(x,0) and Q(0,x) through corner terms; the negative
// part links the two diagonal sections.
void CoreSolver::build_boundary_exchange() {
    OrbitSumParts fo = full_orbit_sum(m_, sys_, 0);
    const std::set<UnknownTag> wanted{kLY0, kLX0, kD0, kD1};
    const auto canon = canonical_points(m_);
    LinearForm equated(fo.lhs);
    if (m_.kind == ModelKind::ReverseKreweras) {
        // The alternating weights annihilate the whole right side.
        for (const auto& [mdeg, u] : fo.rhs_slices) {
            (void)mdeg;
            if (!u.is_trivial())
                raise(ErrorCode::NullvectorCheckFailed,
                      "full-orbit right side expected to vanish");
        }
    } else {
        // Subtract the right side first so the reductions act on the full
        // vanishing combination.
        equated = equated - full_orbit_rhs_form(fo);
    }
    equated = reduce_to_sections(m_, equated, wanted, canon);
    require_functions_within(equated, wanted, "full-orbit relation");
    SplitForm split = x_split(equated, bound_);
    f_plus_ = reduce_points(m_, split.pos, canon);
    f_neg_ = reduce_points(m_, split.neg, canon);
    require_functions_within(f_plus_, {kLY0, kLX0}, "boundary exchange, positive part");
    require_functions_within(f_neg_, {kD0, kD1}, "boundary exchange, negative part");
}

// For the direct model the full-orbit right side survives; each y-slice of
// the numerator pairs with a y-coefficient of 1/K. Those coefficients come
// from the power-series branch of the kernel's root in y:
//   Y0 = (1 - t A0 - sqrt(Delta)) / (2 t A1),
//   [y^-m] (1/K) = Y0^m / sqrt(Delta)   (m >= 0),
//   [y^j]  (1/K) = (x Y0)^j / sqrt(Delta)  (j >= 0).
LinearForm CoreSolver::full_orbit_rhs_form(const OrbitSumParts& fo) {
    const int margin = 8;
    const PuiseuxSeries sqrtD = delta_exact_.truncated_order(w_ + margin).sqrt();
    const PuiseuxSeries inv_sqrtD = sqrtD.inverted();
    const PuiseuxSeries one = PuiseuxSeries::constant(Rational(1));
    const PuiseuxSeries a0 = PuiseuxSeries::from_x_poly(m_.sect_zero);
    const PuiseuxSeries denom =
        (t_power(Rational(2), 1) * PuiseuxSeries::from_x_poly(m_.sect_plus))
            .truncated_order(w_ + margin);
    const PuiseuxSeries y0 = (one - t_power(Rational(1), 1) * a0 - sqrtD) * denom.inverted();
    const PuiseuxSeries xy0 = PuiseuxSeries::monomial(Rational(1), 1, 0) * y0;
    LinearForm out;
    for (const auto& [mdeg, u] : fo.rhs_slices) {
        if (u.is_trivial()) continue;
        const PuiseuxSeries kval =
            (mdeg >= 0 ? series_pow(y0, mdeg) : series_pow(xy0, -mdeg)) * inv_sqrtD;
        out = out + u.scaled(kval);
    }
    return out;
}

// Step 3: the half-orbit sum equated with the kernel coefficient extraction,
// multiplied by s * sqrt(Delta) with s = (2 t A1)^J so that every kernel
// coefficient becomes an exact polynomial pair:
//   (2 t A1) Y0 = (1 - t A0) - sqrt(Delta).
void CoreSolver::build_master() {
    OrbitSumParts ho = half_orbit_sum(m_, sys_, 0);
    const std::set<UnknownTag> wanted{kLY0, kLX0, kD0, kD1};
    const auto canon = canonical_points(m_);
    // The half-orbit sum is NOT a vanishing combination on its own (it equals
    // the kernel-coefficient expansion built below), so it must not be run
    // through the rescaling reductions here. Stray sections are eliminated
    // from the assembled pair instead, where both parities share the pivot.
    const LinearForm lhs(ho.lhs);

    const PuiseuxSeries one = PuiseuxSeries::constant(Rational(1));
    const SeriesPair base{one - t_power(Rational(1), 1) * PuiseuxSeries::from_x_poly(m_.sect_zero),
                          PuiseuxSeries::constant(Rational(-1))};
    const PuiseuxSeries two_t_a1 =
        t_power(Rational(2), 1) * PuiseuxSeries::from_x_poly(m_.sect_plus);

    int clearing = 1;
    for (const auto& [mdeg, u] : ho.rhs_slices)
        if (!u.is_trivial()) clearing = std::max(clearing, std::abs(mdeg));

    master_even_ = LinearForm();
    master_odd_ = lhs.scaled(series_pow(two_t_a1, clearing));
    for (const auto& [mdeg, u] : ho.rhs_slices) {
        if (u.is_trivial()) continue;
        const int p = std::abs(mdeg);
        const SeriesPair cw = pair_pow(base, p, delta_exact_);
        PuiseuxSeries shift = series_pow(two_t_a1, clearing - p);
        if (mdeg < 0) shift = shift * PuiseuxSeries::monomial(Rational(1), p, 0);
        master_even_ = master_even_ - u.scaled(cw.even * shift);
        master_odd_ = master_odd_ - u.scaled(cw.odd * shift);
    }
    // Normalize the assembled pair: clearing to a common x-depth of zero and
    // stripping any common monomial factor left over from the scaling above.
    pair_strip_monomial();

    // Step 4a: reduce stray sections out of the pair. The selection mirrors
    // reduce_to_sections, but the elimination runs through pair_eliminate so
    // the even and odd parts stay consistently scaled.
    for (int guard = 0;; ++guard) {
        if (guard >= 10000) throw std::logic_error("master section reduction did not terminate");
        std::optional<UnknownTag> target;
        auto scan = [&](const LinearForm& f) {
            for (const auto& [tag, c] : f.terms()) {
                if (!tag.is_function() || wanted.count(tag)) continue;
                if (c.is_zero_value()) continue;
                if (!target || std::abs(tag.i) > std::abs(target->i)) target = tag;
            }
        };
        scan(master_even_);
        scan(master_odd_);
        if (!target) break;
        const int k = target->i;
        LinearForm rel;
        switch (target->kind) {
            case UnknownTag::Kind::LineY:
                rel = functional_row_slice(m_, 0, k - 1);
                break;
            case UnknownTag::Kind::LineX:
                rel = functional_row_slice(m_, 3, k - 1);
                break;
            case UnknownTag::Kind::Diag:
                if (k == 0 || k == 1)
                    raise(ErrorCode::UnknownSetMismatch,
                          "diagonal sections 0 and 1 must be part of the wanted set");
                rel = functional_row_slice(m_, 1, k >= 2 ? k - 1 : k + 1);
                break;
            case UnknownTag::Kind::Point:
                throw std::logic_error("unexpected point tag");
        }
        rel = reduce_points(m_, rel, canon);
        pair_eliminate(rel, *target);
    }

    // Step 4b: remove the sections that do not belong in the master relation.
    pair_eliminate(f_plus_, kLX0);
    if (m_.kind == ModelKind::ReverseKreweras) {
        pair_eliminate(f_neg_, kD1);
    } else if (!coeff_or_zero(master_even_, kD1).is_zero_value() ||
               !coeff_or_zero(master_odd_, kD1).is_zero_value()) {
        raise(ErrorCode::UnknownSetMismatch,
              "shifted diagonal section survived the half-orbit reduction");
    }
}

// Cross-multiplied elimination of `tag` from the master pair against a plain
// relation (no sqrt part): both parities are scaled by the same pivot. The
// relation is first cleared to polynomial form in x — a pivot with negative
// x-powers would push x-depth into the pair, and the later split in x turns
// any such depth into spurious crossing points near the axes.
void CoreSolver::pair_eliminate(const LinearForm& rel_in, const UnknownTag& tag) {
    const PuiseuxSeries ce = coeff_or_zero(master_even_, tag);
    const PuiseuxSeries co = coeff_or_zero(master_odd_, tag);
    if (ce.is_zero_value() && co.is_zero_value()) return;
    if (!rel_in.has(tag))
        raise(ErrorCode::NotEliminable, "exchange relation lacks " + tag.str());
    LinearForm rel = rel_in;
    const int depth = min_x_exponent(rel);
    if (depth < 0) rel = rel.scaled(PuiseuxSeries::monomial(Rational(1), -depth, 0));
    const PuiseuxSeries pivot = rel.coeff(tag);
    if (pivot.is_zero_value())
        raise(ErrorCode::NotEliminable, "vanishing pivot for " + tag.str());
    LinearForm even = master_even_.scaled(pivot);
    LinearForm odd = master_odd_.scaled(pivot);
    if (!ce.is_zero_value()) even = even - rel.scaled(ce);
    if (!co.is_zero_value()) odd = odd - rel.scaled(co);
    if (!coeff_or_zero(even, tag).is_zero_value() || !coeff_or_zero(odd, tag).is_zero_value())
        raise(ErrorCode::NotEliminable, "elimination left a residue in " + tag.str());
    master_even_ = std::move(even);
    master_odd_ = std::move(odd);
    pair_strip_monomial();
}

// Divides both parities of the master pair by their common leading monomial
// in x and t. This keeps the pair in its minimal polynomial normal form: a
// common x-monomial would shift the crossing depth of the split, and a
// common negative x-power (depth) must be cleared for the split to stay
// finite on the even side.
void CoreSolver::pair_strip_monomial() {
    std::optional<int> minx;
    long common_ram = 1;
    auto scan_ram = [&](const PuiseuxSeries& s) {
        if (s.is_zero_value()) return;
        common_ram = std::lcm(common_ram, static_cast<long>(s.ram()));
        const int v = min_x_exponent(s);
        minx = minx ? std::min(*minx, v) : v;
    };
    auto scan_form_ram = [&](const LinearForm& f) {
        scan_ram(f.known());
        for (const auto& [tag, c] : f.terms()) {
            (void)tag;
            scan_ram(c);
        }
    };
    scan_form_ram(master_even_);
    scan_form_ram(master_odd_);
    if (!minx) return;

    std::optional<long> mint;  // valuation scaled to common_ram units
    auto scan_val = [&](const PuiseuxSeries& s) {
        if (s.is_zero_value()) return;
        const auto v = s.valuation();
        if (!v) return;
        const long scaled = static_cast<long>(*v) * (common_ram / s.ram());
        mint = mint ? std::min(*mint, scaled) : scaled;
    };
    auto scan_form_val = [&](const LinearForm& f) {
        scan_val(f.known());
        for (const auto& [tag, c] : f.terms()) {
            (void)tag;
            scan_val(c);
        }
    };
    scan_form_val(master_even_);
    scan_form_val(master_odd_);
    const long tshift = mint.value_or(0);
    if (*minx == 0 && tshift == 0) return;
    const PuiseuxSeries mono = PuiseuxSeries::monomial(
        Rational(1), -*minx, static_cast<int>(-tshift), static_cast<int>(common_ram));
    master_even_ = master_even_.scaled(mono);
    master_odd_ = master_odd_.scaled(mono);
}

// Step 5: divide by sqrt(DeltaPlus) and split at x^0. The parity structure is
// what keeps the split finite: the x-axis section must sit entirely in the
// even part (its carrier 1/sqrt(DeltaPlus) has x-support >= 0) and the
// diagonal section entirely in the odd part (its carrier sqrt(Delta0 *
// DeltaMinus) has x-support <= 0).
void CoreSolver::split_master() {
    require_functions_within(master_even_, {kLY0}, "master relation, even part");
    require_functions_within(master_odd_, {kD0}, "master relation, odd part");

    LinearForm g(master_even_.known() * isp_ + master_odd_.known() * szm_);
    for (const auto& [tag, c] : master_even_.terms()) g.add_term(tag, c * isp_);
    for (const auto& [tag, c] : master_odd_.terms()) g.add_term(tag, c * szm_);

    const auto canon = canonical_points(m_);
    SplitForm sp = x_split(g, bound_);
    pos_ = reduce_points(m_, sp.pos, canon);
    h0_ = reduce_points(m_, sp.zero, canon);
    negf_ = reduce_points(m_, sp.neg.x_inverted(), canon);
    require_functions_within(pos_, {kLY0}, "split master, positive part");
    require_functions_within(h0_, {}, "split master, zero slice");
    require_functions_within(negf_, {kD0}, "split master, negative part");
    if (coeff_or_zero(pos_, kLY0).is_zero_value())
        raise(ErrorCode::UnknownSetMismatch, "x-axis coefficient vanished in the split master");
    if (coeff_or_zero(negf_, kD0).is_zero_value())
        raise(ErrorCode::UnknownSetMismatch, "diagonal coefficient vanished in the split master");
}

// Step 6: scalar equations. Every admissible kernel root contributes one; the
// x^0 slice is always available; on strata where a side's section coefficient
// has positive x-valuation, the slices below it are section-free and join the
// pool; equal boundary weights contribute the x<->y symmetry equation.
void CoreSolver::build_pool() {
    slots_ = kernel_root_slots(m_, w_);
    for (const auto& slot : slots_) {
        if (!slot.root) {
            notes_ += "slot " + std::to_string(slot.label) + " degenerate (" +
                      slot.degenerate_reason + "); ";
            continue;
        }
        const LinearForm& side = slot.flipped ? negf_ : pos_;
        LinearForm row = substitute_root(side, *slot.root);
        row = row.scaled(row_calibration(m_, slot.label));
        pool_.emplace_back(slot.label, row.truncated(w_));
    }
    if (!h0_.is_trivial()) pool_.emplace_back(0, h0_.truncated(w_));
    harvest_slices(pos_, kLY0, 100);
    harvest_slices(negf_, kD0, 200);
    if (m_.w.a == m_.w.b) {
        // Equal boundary weights make the model x<->y symmetric: Q(0,1) = Q(1,0).
        LinearForm sym;
        sym.add_term(UnknownTag::point(0, 1), PuiseuxSeries::constant(Rational(1)));
        sym.add_term(UnknownTag::point(1, 0), PuiseuxSeries::constant(Rational(-1)));
        sym = reduce_points(m_, sym, canonical_points(m_));
        if (!sym.is_trivial()) pool_.emplace_back(900, sym.truncated(w_));
    }
    std::sort(pool_.begin(), pool_.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
}

void CoreSolver::harvest_slices(const LinearForm& side, const UnknownTag& tag, int label_base) {
    if (!side.has(tag)) return;
    const auto v = x_valuation(side.coeff(tag));
    if (!v || *v <= 1) return;
    const auto canon = canonical_points(m_);
    const int cap = std::min(*v - 1, 12);
    for (int e = 1; e <= cap; ++e) {
        LinearForm row = reduce_points(m_, x_slice(side, e, bound_), canon);
        if (row.is_trivial()) continue;
        bool has_function = false;
        for (const auto& [t2, c2] : row.terms())
            has_function = has_function || (t2.is_function() && !c2.is_zero_value());
        if (has_function) continue;
        pool_.emplace_back(label_base + e, row.truncated(w_));
    }
}

LinearForm CoreSolver::pool_row(int label) const {
    for (const auto& [lab, row] : pool_)
        if (lab == label) return row;
    raise(ErrorCode::SelectorOutOfRange, "no pool equation with label " + std::to_string(label));
}

// Direct model only: the five root equations over {Q00, Q10..Q40} are singular
// by construction; record that determinant, then substitute the origin series
// solved through the reverse model at the same weights.
void CoreSolver::inject_origin(Solution& sol) {
    std::vector<int> live;
    for (const auto& s : slots_)
        if (s.root) live.push_back(s.label);
    if (live.size() == 5) {
        std::vector<LinearForm> rows;
        for (int lab : live) rows.push_back(pool_row(lab));
        const std::vector<UnknownTag> unk{kQ00, UnknownTag::point(1, 0), UnknownTag::point(2, 0),
                                          UnknownTag::point(3, 0), UnknownTag::point(4, 0)};
        const PuiseuxSeries det = system_determinant(rows, unk);
        sol.determinants.push_back(make_diag(set_name("D5x5", live), live, det));
    }
    const Model rev = make_model(ModelKind::ReverseKreweras, m_.w);
    CoreOptions inner;
    inner.want_q0y = false;
    inner.want_qxy = false;
    const Solution rsol = solve_entry(rev, w_, std::nullopt, inner);
    const PuiseuxSeries q00 = rsol.q00.truncated(w_);
    for (auto& [lab, row] : pool_) {
        (void)lab;
        row = row.substituted(kQ00, q00);
    }
    solved_[kQ00] = q00;
    notes_ += "origin series injected from the reverse model; ";
}

void CoreSolver::record_documented_determinants(Solution& sol,
                                                const std::vector<UnknownTag>& unknowns) {
    const bool reverse = m_.kind == ModelKind::ReverseKreweras;
    const int k_doc = reverse ? 3 : 4;
    if (static_cast<int>(unknowns.size()) != k_doc) return;
    const std::vector<int> base = reverse ? std::vector<int>{1, 3, 5, 7}
                                          : std::vector<int>{0, 1, 3, 5, 7, 9};
    std::vector<int> live;
    std::set<int> have;
    for (const auto& [lab, row] : pool_) {
        (void)row;
        have.insert(lab);
    }
    for (int lab : base)
        if (have.count(lab)) live.push_back(lab);
    for (const auto& combo : combinations(live, k_doc)) {
        std::vector<LinearForm> rows;
        for (int lab : combo) rows.push_back(pool_row(lab));
        const PuiseuxSeries det = system_determinant(rows, unknowns);
        det_cache_[combo] = det;
        sol.determinants.push_back(make_diag(set_name("D", combo), combo, det));
    }
}

// Step 7: pick an equation set and solve. Scan order: the documented
// preference sequence, then ascending label sets; the first candidate whose
// determinant is nonsingular and whose solution carries enough accurate
// orders wins.
void CoreSolver::solve_corners(Solution& sol) {
    std::set<UnknownTag> present;
    for (const auto& [lab, row] : pool_) {
        (void)lab;
        for (const auto& [tag, c] : row.terms())
            if (!c.is_zero_value()) present.insert(tag);
    }
    const std::set<UnknownTag> expected = expected_corners(m_);
    for (const auto& tag : present)
        if (!expected.count(tag) || (m_.kind == ModelKind::Kreweras && tag == kQ00))
            raise(ErrorCode::UnknownSetMismatch, "unexpected corner unknown " + tag.str());
    const std::vector<UnknownTag> unknowns(present.begin(), present.end());
    const int k = static_cast<int>(unknowns.size());

    record_documented_determinants(sol, unknowns);

    if (k == 0 || static_cast<int>(pool_.size()) < k)
        raise(ErrorCode::AllSystemsSingular,
              "equation pool (" + std::to_string(pool_.size()) +
                  ") cannot determine " + std::to_string(k) + " corner unknowns");

    std::vector<int> available;
    for (const auto& [lab, row] : pool_) {
        (void)row;
        available.push_back(lab);
    }

    std::set<std::string> recorded;
    for (const auto& d : sol.determinants) recorded.insert(d.name);

    std::optional<std::vector<int>> chosen;
    std::map<UnknownTag, PuiseuxSeries> values;
    for (const auto& combo : candidate_sets(m_, available, k)) {
        std::vector<LinearForm> rows;
        for (int lab : combo) rows.push_back(pool_row(lab));
        PuiseuxSeries det;
        if (auto it = det_cache_.find(combo); it != det_cache_.end()) {
            det = it->second;
        } else {
            det = system_determinant(rows, unknowns);
            det_cache_[combo] = det;
        }
        const std::string name = set_name("D", combo);
        if (recorded.insert(name).second)
            sol.determinants.push_back(make_diag(name, combo, det));
        if (!det.ram_normalized().valuation()) continue;  // singular through the working order
        std::map<UnknownTag, PuiseuxSeries> vals;
        try {
            vals = solve_square_system(rows, unknowns);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::SingularSystem || e.code() == ErrorCode::PrecisionExhausted)
                continue;
            throw;
        }
        bool enough = true;
        for (auto& [tag, val] : vals) {
            (void)tag;
            val = val.ram_normalized();
            enough = enough && val.ram() == 1 && val.acc() >= n_;
        }
        if (!enough) continue;
        chosen = combo;
        values = std::move(vals);
        break;
    }
    if (!chosen) {
        std::ostringstream os;
        os << "no candidate equation set determines the corners; determinants:";
        for (const auto& d : sol.determinants) {
            os << " " << d.name << "=";
            if (d.vanishes)
                os << "0";
            else
                os << "t^" << d.leading_order;
        }
        raise(ErrorCode::AllSystemsSingular, os.str());
    }
    sol.chosen_labels = *chosen;
    for (const auto& [tag, val] : values) solved_[tag] = val;

    // Every remaining pool equation must be satisfied by the solved values.
    for (const auto& [lab, row] : pool_) {
        LinearForm resid = row;
        for (const auto& [tag, val] : solved_) resid = resid.substituted(tag, val);
        for (const auto& [tag, c] : resid.terms())
            if (!c.is_zero_value())
                raise(ErrorCode::NullvectorCheckFailed,
                      "equation " + std::to_string(lab) + " retains unknown " + tag.str());
        const PuiseuxSeries r = resid.known().truncated_order(n_);
        if (!r.is_zero_value())
            raise(ErrorCode::NullvectorCheckFailed,
                  "solved corner values violate equation " + std::to_string(lab));
    }
}

void CoreSolver::check_series(const PuiseuxSeries& s, const std::string& name) const {
    if (s.ram() != 1)
        raise(ErrorCode::DivisibilityFailure, name + " came out with fractional exponents");
    if (s.acc() < n_)
        raise(ErrorCode::PrecisionExhausted,
              name + " accurate only through order " + std::to_string(s.acc()));
    for (const auto& [key, poly] : s.terms()) {
        if (key < 0 || (!poly.is_zero() && poly.min_exp() < 0))
            raise(ErrorCode::DivisibilityFailure, name + " has support outside the quarter plane");
    }
}

// Step 7b: order-by-order back-substitution for the two sections carried by
// the split master.
void CoreSolver::back_substitute(Solution& sol) {
    LinearForm f = pos_;
    for (const auto& [tag, val] : solved_) f = f.substituted(tag, val);
    for (const auto& [tag, c] : f.terms())
        if (tag != kLY0 && !c.is_zero_value())
            raise(ErrorCode::UnknownSetMismatch, "unresolved term " + tag.str() +
                                                     " in the x-axis back-substitution");
    sol.qx0 = series_divide(-f.known(), f.coeff(kLY0), "x-axis back-substitution");
    check_series(sol.qx0, "Q(x,0)");

    LinearForm fd = negf_;
    for (const auto& [tag, val] : solved_) fd = fd.substituted(tag, val);
    for (const auto& [tag, c] : fd.terms())
        if (tag != kD0 && !c.is_zero_value())
            raise(ErrorCode::UnknownSetMismatch, "unresolved term " + tag.str() +
                                                     " in the diagonal back-substitution");
    sol.qd0 = series_divide(-fd.known(), fd.coeff(kD0), "diagonal back-substitution");
    check_series(sol.qd0, "diagonal section");

    // Origin consistency and corner fill-in.
    if (solved_.count(kQ00)) {
        sol.q00 = solved_[kQ00];
        if (!series_x_slice(sol.qx0, 0).agrees_with(sol.q00, n_))
            raise(ErrorCode::NullvectorCheckFailed, "Q(x,0) does not reproduce Q(0,0)");
    } else {
        sol.q00 = series_x_slice(sol.qx0, 0);
        solved_[kQ00] = sol.q00;
    }
    if (!series_x_slice(sol.qd0, 0).agrees_with(sol.q00, n_))
        raise(ErrorCode::NullvectorCheckFailed, "diagonal section does not reproduce Q(0,0)");
    for (const auto& tag : expected_corners(m_)) {
        if (solved_.count(tag)) continue;
        if (tag.kind == UnknownTag::Kind::Point && tag.j == 0)
            solved_[tag] = series_x_slice(sol.qx0, tag.i);
    }
    sol.corner = solved_;
}

// Step 7c: Q(0,y) from the positive boundary-exchange relation (division by
// its y-axis coefficient), with a reflected solve at swapped weights as the
// fallback.
void CoreSolver::recover_y_axis(Solution& sol) {
    auto attempt_division = [&]() {
        LinearForm f = f_plus_.truncated(w_);
        f = f.substituted(kLY0, sol.qx0);
        for (const auto& [tag, val] : solved_) f = f.substituted(tag, val);
        for (const auto& [tag, c] : f.terms())
            if (tag != kLX0 && !c.is_zero_value())
                raise(ErrorCode::UnknownSetMismatch,
                      "unresolved term " + tag.str() + " in the y-axis recovery");
        if (!f.has(kLX0))
            raise(ErrorCode::NotEliminable, "exchange relation lost the y-axis section");
        PuiseuxSeries q0y = series_divide(-f.known(), f.coeff(kLX0), "y-axis recovery");
        check_series(q0y, "Q(0,y)");
        if (!series_x_slice(q0y, 0).agrees_with(sol.q00, n_))
            raise(ErrorCode::NullvectorCheckFailed, "Q(0,y) does not reproduce Q(0,0)");
        return q0y;
    };
    try {
        sol.q0y = attempt_division();
    } catch (const Error&) {
        if (!opts_.allow_swap_fallback) throw;
        const Model sw = make_model(m_.kind, swapped(m_.w));
        CoreOptions inner;
        inner.want_q0y = false;
        inner.want_qxy = false;
        inner.allow_swap_fallback = false;
        const Solution ssol = solve_entry(sw, n_, std::nullopt, inner);
        if (!ssol.q00.agrees_with(sol.q00, n_))
            raise(ErrorCode::NullvectorCheckFailed, "reflected origin series disagrees");
        sol.q0y = ssol.qx0;
        notes_ += "y-axis section via reflected solve; ";
    }
    for (const auto& tag : expected_corners(m_)) {
        if (sol.corner.count(tag)) continue;
        if (tag.kind == UnknownTag::Kind::Point && tag.i == 0)
            sol.corner[tag] = series_x_slice(sol.q0y, tag.j);
    }
}

// Step 7d: the full series from the defining relation, layer by layer:
//   Q_n = [t^n] (1/c + Aw Q(x,0) + Bw Q(0,y) + Ow Q(0,0)) + S * Q_{n-1}.
void CoreSolver::assemble_full(Solution& sol) {
    const TriPoly aw = m_.a_weight_at(0);
    const TriPoly bw = m_.b_weight_at(0);
    const TriPoly ow = m_.origin_weight_at(0);
    auto x_layer = [&](const PuiseuxSeries& s, int key) { return XYPoly::from_x_poly(s.coeff(key)); };
    auto y_layer = [&](const PuiseuxSeries& s, int key) {
        XYPoly out;
        for (const auto& [e, c] : s.coeff(key).terms()) out.add_term(0, e, c);
        return out;
    };
    auto const_layer = [&](const PuiseuxSeries& s, int key) {
        const LaurentPoly& p = s.coeff(key);
        XYPoly out;
        if (!p.is_zero()) out.add_term(0, 0, p.coeff(0));
        return out;
    };
    sol.qxy.assign(n_ + 1, XYPoly());
    for (int n = 0; n <= n_; ++n) {
        XYPoly layer;
        if (n == 0) layer.add_term(0, 0, Rational(1) / m_.w.c);
        for (const auto& [d, cxy] : aw.terms())
            if (d <= n) layer = layer + cxy * x_layer(sol.qx0, n - d);
        for (const auto& [d, cxy] : bw.terms())
            if (d <= n) layer = layer + cxy * y_layer(sol.q0y, n - d);
        for (const auto& [d, cxy] : ow.terms())
            if (d <= n) layer = layer + cxy * const_layer(sol.q00, n - d);
        if (n > 0) layer = layer + m_.step_poly * sol.qxy[n - 1];
        for (const auto& [key, c] : layer.terms()) {
            (void)c;
            if (key.first < 0 || key.second < 0)
                raise(ErrorCode::DivisibilityFailure,
                      "full-series layer " + std::to_string(n) +
                          " has support outside the quarter plane");
        }
        sol.qxy[n] = layer;
    }
}

// ---------------------------------------------------------------------------
// Entry point: weight-swap dispatch and the working-order retry schedule.

int det_allowance(const Model& model) {
    // Headroom for the valuation of the solving determinant.
    return model.kind == ModelKind::Kreweras ? 28 : 12;
}

Solution transposed(Solution s, const Weights& original) {
    s.w = original;
    std::map<UnknownTag, PuiseuxSeries> corner;
    for (const auto& [tag, val] : s.corner)
        corner[UnknownTag::point(tag.j, tag.i)] = val;
    s.corner = std::move(corner);
    std::swap(s.qx0, s.q0y);
    const MonomialMap swap_xy{{0, 1}, {1, 0}};
    for (auto& layer : s.qxy) layer = layer.substituted(swap_xy);
    s.notes += "solved at swapped weights and reflected; ";
    return s;
}

Solution solve_entry(const Model& model, int order, std::optional<int> working,
                     const CoreOptions& opts) {
    if (order < 0) raise(ErrorCode::UsageError, "negative series order");
    if (model.w.a == Rational(1) && model.w.b != Rational(1)) {
        // Reflect so the richer boundary weight sits on the x-axis.
        const Model sw = make_model(model.kind, swapped(model.w));
        CoreOptions inner = opts;
        inner.want_q0y = true;  // becomes the x-axis section after reflection
        return transposed(solve_entry(sw, order, working, inner), model.w);
    }
    int w = working.value_or(std::max(2 * order, order + 16) + det_allowance(model));
    w = std::max(w, order + 4);
    const int attempts = 4;
    for (int attempt = 0;; ++attempt) {
        try {
            CoreSolver core(model, order, w, opts);
            return core.run();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::PrecisionExhausted || attempt + 1 >= attempts) throw;
            w += 12 + attempt * 12;
        }
    }
}

}  // namespace

Solution solve_model(const Model& model, int order, std::optional<int> working_order) {
    CoreOptions opts;
    return solve_entry(model, order, working_order, opts);
}

}  // namespace qwalk
