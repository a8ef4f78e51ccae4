#include "newton_puiseux.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qwalk {
namespace {

// Polynomial in the unknown, with x-free t-series coefficients keyed by degree.
using XPoly = std::map<int, PuiseuxSeries>;

struct HullPoint {
    int deg;
    int val;  // valuation of the coefficient, in ramified units
};

[[noreturn]] void internal_error(const std::string& what) {
    throw std::logic_error("newton_puiseux: " + what);
}

Rational binomial(int n, int k) {
    Rational r(1);
    for (int j = 1; j <= k; ++j) r *= Rational(n - k + j) / Rational(j);
    return r;
}

std::pair<XPoly, int> to_xpoly(const PuiseuxSeries& s) {
    if (s.is_zero_value()) internal_error("zero polynomial has no well-defined roots");
    int min_deg = 0;
    bool first = true;
    for (const auto& [key, poly] : s.terms()) {
        int m = poly.min_exp();
        min_deg = first ? m : std::min(min_deg, m);
        first = false;
    }
    XPoly out;
    for (const auto& [key, poly] : s.terms()) {
        for (const auto& [e, c] : poly.terms()) {
            auto it = out.find(e - min_deg);
            if (it == out.end()) {
                PuiseuxSeries base = PuiseuxSeries::zero_with_acc(s.acc(), s.ram());
                it = out.emplace(e - min_deg, std::move(base)).first;
            }
            it->second = it->second + PuiseuxSeries::monomial(c, 0, key, s.ram());
        }
    }
    return {std::move(out), min_deg};
}

std::vector<HullPoint> lower_hull(const XPoly& p) {
    std::vector<HullPoint> pts;
    for (const auto& [deg, coeff] : p) {
        auto v = coeff.valuation();
        if (!v) continue;  // coefficient vanishes through its accuracy
        pts.push_back({deg, *v});
    }
    if (pts.empty()) internal_error("all coefficients vanish");
    std::vector<HullPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const HullPoint& a = hull[hull.size() - 2];
            const HullPoint& b = hull[hull.size() - 1];
            int64_t cross = static_cast<int64_t>(b.deg - a.deg) * (pt.val - a.val) -
                            static_cast<int64_t>(b.val - a.val) * (pt.deg - a.deg);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return hull;
}

PuiseuxSeries eval_xpoly(const XPoly& p, const PuiseuxSeries& x, int cap) {
    // All coefficients and x share one ramification; cap is in those units.
    PuiseuxSeries r = PuiseuxSeries::zero_with_acc(cap, x.ram());
    int top = p.rbegin()->first;
    for (int e = top; e >= 0; --e) {
        if (e != top) r = (r * x).truncated(cap);
        auto it = p.find(e);
        if (it != p.end()) {
            if (it->second.ram() != x.ram()) internal_error("mixed ramification in evaluation");
            r = (r + it->second).truncated(cap);
        }
    }
    return r;
}

XPoly derivative(const XPoly& p) {
    XPoly out;
    for (const auto& [deg, coeff] : p)
        if (deg >= 1) out[deg - 1] = coeff.scaled(Rational(deg));
    return out;
}

// Rational roots with multiplicity of a dense rational polynomial (ascending
// coefficients, nonzero constant and leading term). The polynomial must split
// over the rationals; a factor with no rational root raises
// NonRationalLeadingCoefficient.
std::vector<std::pair<Rational, int>> rational_roots(std::vector<Rational> poly) {
    auto degree_of = [](const std::vector<Rational>& q) {
        int d = static_cast<int>(q.size()) - 1;
        while (d > 0 && is_zero(q[d])) --d;
        return d;
    };
    auto deflate = [](std::vector<Rational>& q, const Rational& root) {
        // Synthetic division; returns true (and commits) when the remainder is 0.
        int d = static_cast<int>(q.size()) - 1;
        while (d > 0 && is_zero(q[d])) {
            q.pop_back();
            --d;
        }
        std::vector<Rational> quot(static_cast<size_t>(d));
        Rational carry = q[static_cast<size_t>(d)];
        for (int i = d - 1; i >= 0; --i) {
            quot[static_cast<size_t>(i)] = carry;
            carry = q[static_cast<size_t>(i)] + carry * root;
        }
        if (!is_zero(carry)) return false;
        q = std::move(quot);
        return true;
    };

    std::map<Rational, int> found;
    while (true) {
        int d = degree_of(poly);
        if (d == 0) break;
        if (d == 1) {
            Rational root = -poly[0] / poly[1];
            ++found[root];
            deflate(poly, root);
            continue;
        }
        if (d == 2) {
            Rational disc = poly[1] * poly[1] - Rational(4) * poly[2] * poly[0];
            auto s = exact_sqrt(disc);
            if (!s)
                raise(ErrorCode::NonRationalLeadingCoefficient,
                      "quadratic edge factor has irrational roots");
            Rational r1 = (-poly[1] + *s) / (Rational(2) * poly[2]);
            Rational r2 = (-poly[1] - *s) / (Rational(2) * poly[2]);
            ++found[r1];
            if (!deflate(poly, r1)) internal_error("deflation by exact root failed");
            ++found[r2];
            if (!deflate(poly, r2)) internal_error("deflation by exact root failed");
            continue;
        }
        // Degree >= 3: search p/q with p | constant numerator, q | leading
        // numerator, over the integer form of the polynomial.
        mpz_class denom_lcm(1);
        for (const auto& c : poly) {
            mpz_class den = c.get_den();
            mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), den.get_mpz_t());
        }
        std::vector<mpz_class> ip;
        ip.reserve(poly.size());
        for (const auto& c : poly) {
            Rational scaled = c * Rational(denom_lcm);
            ip.push_back(scaled.get_num());
        }
        mpz_class a0 = ip[0];
        mpz_class an = ip[static_cast<size_t>(degree_of(poly))];
        auto divisors = [](mpz_class n) {
            n = abs(n);
            std::vector<mpz_class> out;
            if (n > mpz_class(1000000000)) return out;  // give up: too large
            for (mpz_class d(1); d * d <= n; ++d) {
                if (n % d == 0) {
                    out.push_back(d);
                    out.push_back(n / d);
                }
                if (out.size() > 8192) return std::vector<mpz_class>{};
            }
            return out;
        };
        auto eval_at = [&](const Rational& z) {
            Rational acc(0);
            for (int i = degree_of(poly); i >= 0; --i) acc = acc * z + poly[i];
            return acc;
        };
        std::vector<mpz_class> ps = divisors(a0), qs = divisors(an);
        bool hit = false;
        Rational root;
        for (const auto& pnum : ps) {
            for (const auto& qden : qs) {
                Rational cand(pnum, qden);
                cand.canonicalize();
                if (is_zero(eval_at(cand))) {
                    root = cand;
                    hit = true;
                } else if (is_zero(eval_at(-cand))) {
                    root = -cand;
                    hit = true;
                }
                if (hit) break;
            }
            if (hit) break;
        }
        if (!hit)
            raise(ErrorCode::NonRationalLeadingCoefficient,
                  "edge polynomial has no rational root");
        ++found[root];
        if (!deflate(poly, root)) internal_error("deflation by verified root failed");
    }
    return {found.begin(), found.end()};
}

PuiseuxSeries newton_refine(const XPoly& p, PuiseuxSeries x, int want_units, int pad) {
    XPoly dp = derivative(p);
    for (int iter = 0; iter < 64; ++iter) {
        PuiseuxSeries f = eval_xpoly(p, x, pad);
        if (f.is_zero_value()) return x.truncated(want_units);
        PuiseuxSeries fp = eval_xpoly(dp, x, pad);
        if (fp.is_zero_value())
            raise(ErrorCode::PrecisionExhausted,
                  "derivative vanishes while sharpening a simple branch");
        PuiseuxSeries corr = (f * fp.inverted()).truncated(pad);
        if (corr.is_zero_value()) return x.truncated(want_units);
        x = (x - corr).truncated(pad);
        if (*corr.valuation() > want_units) {
            PuiseuxSeries check = eval_xpoly(p, x, want_units);
            if (!check.is_zero_value())
                raise(ErrorCode::PrecisionExhausted, "branch failed residual check");
            return x.truncated(want_units);
        }
    }
    raise(ErrorCode::PrecisionExhausted, "branch sharpening did not converge");
}

// All branches of p (ram `ram` units); `want_units` is the target accuracy in
// those units. At depth >= 1 only branches with positive valuation are kept.
std::vector<PuiseuxSeries> solve(const XPoly& p, int ram, int want_units, int depth) {
    if (depth > 8) internal_error("ramification recursion too deep");
    std::vector<PuiseuxSeries> out;
    std::vector<HullPoint> hull = lower_hull(p);
    for (size_t h = 0; h + 1 < hull.size(); ++h) {
        const HullPoint a = hull[h];
        const HullPoint b = hull[h + 1];
        int di = b.deg - a.deg;
        int dv = b.val - a.val;
        if (dv >= 0 && depth > 0) continue;  // only vanishing branches in recursions
        if (dv == 0 && depth == 0)
            raise(ErrorCode::DegenerateRegime,
                  "a kernel branch has valuation zero; the finite/divergent split "
                  "does not apply");
        int g = std::gcd(std::abs(dv), di);
        int sp = dv / g;   // reduced slope numerator
        int sq = di / g;   // reduced slope denominator (= ramification factor)
        int span = di / sq;
        // Edge equation in the leading coefficient u of x = u t^(-sp/sq) + ...:
        // only every sq-th degree contributes, so the polynomial has gaps.
        std::vector<Rational> edge(static_cast<size_t>(di) + 1, Rational(0));
        for (int k = 0; k <= span; ++k) {
            int deg = a.deg + k * sq;
            int level = a.val + k * sp;
            auto it = p.find(deg);
            if (it == p.end()) continue;
            if (!it->second.is_exact() && level > it->second.acc())
                raise(ErrorCode::PrecisionExhausted,
                      "edge coefficient lies beyond the accurate order");
            edge[static_cast<size_t>(k * sq)] = it->second.coeff_q(level, 1).coeff(0);
        }
        if (is_zero(edge[0]) || is_zero(edge[static_cast<size_t>(di)]))
            internal_error("edge polynomial endpoints must not vanish");

        int sub_ram = ram * sq;
        int want_sub = want_units * sq;
        // In ram sub_ram units, this edge's branches start at t-key (-sp).
        int gamma_key = -sp;

        for (const auto& [z0, mult] : rational_roots(edge)) {
            if (mult == 1) {
                XPoly ps;
                for (const auto& [deg, coeff] : p) ps[deg] = coeff.re_rammed(sq);
                PuiseuxSeries x0 = PuiseuxSeries::monomial(z0, 0, gamma_key, sub_ram);
                int spread = std::abs(gamma_key) * (p.rbegin()->first + 1);
                for (int attempt = 0;; ++attempt) {
                    int pad = want_sub + 8 * (1 << attempt) + 2 * spread;
                    XPoly pt;
                    for (const auto& [deg, coeff] : ps) pt[deg] = coeff.truncated(pad);
                    try {
                        out.push_back(newton_refine(pt, x0, want_sub, pad));
                        break;
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::PrecisionExhausted || attempt >= 3) throw;
                    }
                }
            } else {
                // Repeated edge root: substitute x = t^gamma (z0 + w) and split
                // the coinciding branches at the next order.
                XPoly sub;
                for (const auto& [deg, coeff] : p) {
                    PuiseuxSeries lifted =
                        coeff.re_rammed(sq) *
                        PuiseuxSeries::monomial(Rational(1), 0, gamma_key * deg, sub_ram);
                    for (int k = 0; k <= deg; ++k) {
                        Rational factor = binomial(deg, k) * rational_pow(z0, deg - k);
                        if (is_zero(factor)) continue;
                        auto it = sub.find(k);
                        if (it == sub.end())
                            sub[k] = lifted.scaled(factor);
                        else
                            it->second = it->second + lifted.scaled(factor);
                    }
                }
                std::vector<PuiseuxSeries> ws = solve(sub, sub_ram, want_sub, depth + 1);
                if (static_cast<int>(ws.size()) != mult)
                    internal_error("repeated edge root did not split into its multiplicity");
                PuiseuxSeries head = PuiseuxSeries::monomial(z0, 0, gamma_key, sub_ram);
                PuiseuxSeries tpow = PuiseuxSeries::monomial(Rational(1), 0, gamma_key, sub_ram);
                for (const auto& w : ws) {
                    PuiseuxSeries branch = head + tpow * w;
                    // The correction may live at a deeper ramification than this
                    // edge; scale the accuracy cap into the branch's own units.
                    int64_t cap = static_cast<int64_t>(want_sub) * branch.ram() / sub_ram;
                    out.push_back(branch.truncated(static_cast<int>(cap)));
                }
            }
        }
    }
    if (depth > 0) {
        // Every kept branch must vanish as t -> 0.
        for (const auto& w : out)
            if (!w.valuation() || *w.valuation() <= 0)
                internal_error("recursion produced a non-vanishing correction branch");
    }
    return out;
}

std::optional<bool> try_root_order_less(const PuiseuxSeries& lhs, const PuiseuxSeries& rhs) {
    auto va = lhs.valuation();
    auto vb = rhs.valuation();
    if (!va || !vb) internal_error("root comparison on a zero-valued series");
    int64_t lv = static_cast<int64_t>(*va) * rhs.ram();
    int64_t rv = static_cast<int64_t>(*vb) * lhs.ram();
    if (lv != rv) return lv < rv;
    int ram = std::lcm(lhs.ram(), rhs.ram());
    PuiseuxSeries a = lhs.re_rammed(ram / lhs.ram());
    PuiseuxSeries b = rhs.re_rammed(ram / rhs.ram());
    int64_t cap = std::min<int64_t>(a.acc(), b.acc());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        int64_t ka = ia != a.terms().end() ? ia->first : std::numeric_limits<int64_t>::max();
        int64_t kb = ib != b.terms().end() ? ib->first : std::numeric_limits<int64_t>::max();
        int64_t k = std::min(ka, kb);
        if (k > cap) break;
        Rational ca = ka == k ? ia->second.coeff(0) : Rational(0);
        Rational cb = kb == k ? ib->second.coeff(0) : Rational(0);
        if (ca != cb) return ca < cb;
        if (ka == k) ++ia;
        if (kb == k) ++ib;
    }
    return std::nullopt;  // indistinct through the common accuracy
}

}  // namespace

bool root_order_less(const PuiseuxSeries& lhs, const PuiseuxSeries& rhs) {
    auto r = try_root_order_less(lhs, rhs);
    if (!r)
        raise(ErrorCode::IndistinctLeadingTerms,
              "two branches agree through the working order and cannot be ordered");
    return *r;
}

RootSplit puiseux_roots(const PuiseuxSeries& laurent_in_x, int want_acc) {
    auto [poly, min_deg] = to_xpoly(laurent_in_x);
    (void)min_deg;
    int degree = poly.rbegin()->first;
    std::vector<PuiseuxSeries> branches =
        solve(poly, laurent_in_x.ram(), want_acc * laurent_in_x.ram(), 0);
    if (static_cast<int>(branches.size()) != degree)
        internal_error("branch count does not match the degree span");
    RootSplit split;
    split.degree = degree;
    for (auto& b : branches) {
        PuiseuxSeries r = b.ram_normalized();
        auto v = r.valuation();
        if (!v) internal_error("zero-valued branch");
        if (*v > 0)
            split.finite.push_back(std::move(r));
        else if (*v < 0)
            split.divergent.push_back(std::move(r));
        else
            raise(ErrorCode::DegenerateRegime,
                  "a kernel branch has valuation zero; the finite/divergent split "
                  "does not apply");
    }
    std::sort(split.finite.begin(), split.finite.end(), root_order_less);
    std::sort(split.divergent.begin(), split.divergent.end(), root_order_less);
    return split;
}

}  // namespace qwalk
