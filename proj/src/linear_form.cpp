#include "linear_form.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace qwalk {
namespace {

UnknownTag point_on(const UnknownTag& function_tag, int i) {
    switch (function_tag.kind) {
        case UnknownTag::Kind::LineY: return UnknownTag::point(i, function_tag.i);
        case UnknownTag::Kind::LineX: return UnknownTag::point(function_tag.i, i);
        case UnknownTag::Kind::Diag: return UnknownTag::point(i, i + function_tag.i);
        case UnknownTag::Kind::Point: break;
    }
    throw std::logic_error("point_on: not a function tag");
}

// A negative-index line section is the zero function and can be dropped.
bool is_zero_function(const UnknownTag& tag) {
    return (tag.kind == UnknownTag::Kind::LineY || tag.kind == UnknownTag::Kind::LineX) &&
           tag.i < 0;
}

}  // namespace

std::string UnknownTag::str() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::Point: out << "Q(" << i << "," << j << ")"; break;
        case Kind::LineY: out << (i == 0 ? "Q(x,0)" : "LineY(" + std::to_string(i) + ")"); break;
        case Kind::LineX: out << (i == 0 ? "Q(0,x)" : "LineX(" + std::to_string(i) + ")"); break;
        case Kind::Diag: out << "Diag(" << i << ")"; break;
    }
    return out.str();
}

const PuiseuxSeries& LinearForm::coeff(const UnknownTag& tag) const {
    static const PuiseuxSeries zero;
    auto it = terms_.find(tag);
    return it == terms_.end() ? zero : it->second;
}

void LinearForm::add_known(const PuiseuxSeries& s) { known_ = known_ + s; }

void LinearForm::add_term(const UnknownTag& tag, const PuiseuxSeries& coeff) {
    if (is_zero_function(tag)) return;
    auto it = terms_.find(tag);
    if (it == terms_.end()) {
        if (!coeff.is_zero_value()) terms_.emplace(tag, coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero_value()) terms_.erase(it);
}

LinearForm LinearForm::operator+(const LinearForm& other) const {
    LinearForm out(*this);
    out.add_known(other.known_);
    for (const auto& [tag, c] : other.terms_) out.add_term(tag, c);
    return out;
}

LinearForm LinearForm::operator-(const LinearForm& other) const { return *this + (-other); }

LinearForm LinearForm::operator-() const {
    LinearForm out;
    out.known_ = -known_;
    for (const auto& [tag, c] : terms_) out.terms_.emplace(tag, -c);
    return out;
}

LinearForm LinearForm::scaled(const PuiseuxSeries& factor) const {
    LinearForm out;
    out.known_ = known_ * factor;
    for (const auto& [tag, c] : terms_) out.add_term(tag, c * factor);
    return out;
}

LinearForm LinearForm::scaled(const Rational& factor) const {
    LinearForm out;
    out.known_ = known_.scaled(factor);
    for (const auto& [tag, c] : terms_) out.add_term(tag, c.scaled(factor));
    return out;
}

LinearForm LinearForm::truncated(int new_acc) const {
    LinearForm out;
    out.known_ = known_.truncated_order(new_acc);
    for (const auto& [tag, c] : terms_) out.add_term(tag, c.truncated_order(new_acc));
    return out;
}

bool LinearForm::is_trivial() const { return known_.is_zero_value() && terms_.empty(); }

bool LinearForm::is_scalar() const {
    auto x_free = [](const PuiseuxSeries& s) {
        for (const auto& [key, poly] : s.terms())
            if (poly.min_exp() != 0 || poly.max_exp() != 0) return false;
        return true;
    };
    if (!x_free(known_)) return false;
    for (const auto& [tag, c] : terms_)
        if (tag.is_function() || !x_free(c)) return false;
    return true;
}

LinearForm LinearForm::substituted(const UnknownTag& tag, const PuiseuxSeries& value) const {
    LinearForm out;
    out.known_ = known_;
    for (const auto& [t, c] : terms_) {
        if (t == tag)
            out.add_known(c * value);
        else
            out.add_term(t, c);
    }
    return out;
}

LinearForm LinearForm::x_inverted() const {
    LinearForm out;
    out.known_ = known_.x_inverted();
    for (const auto& [tag, c] : terms_) out.terms_.emplace(tag, c.x_inverted());
    return out;
}

std::string LinearForm::str() const {
    std::ostringstream out;
    out << "[known] " << known_.str();
    for (const auto& [tag, c] : terms_) out << "\n[" << tag.str() << "] " << c.str();
    return out.str();
}

LinearForm eliminate(const LinearForm& target, const LinearForm& using_form,
                     const UnknownTag& tag) {
    if (!target.has(tag)) return target;
    if (!using_form.has(tag))
        raise(ErrorCode::NotEliminable,
              "relation used for elimination does not mention " + tag.str());
    LinearForm out = target.scaled(using_form.coeff(tag)) - using_form.scaled(target.coeff(tag));
    if (out.has(tag))
        raise(ErrorCode::NotEliminable, "elimination left a residue on " + tag.str());
    return out;
}

namespace {

// Monomial q * x^e * t^(key/ram) wrapped with an accuracy ceiling.
PuiseuxSeries capped_monomial(const Rational& q, int x_exp, int key, int ram, int acc) {
    PuiseuxSeries m = PuiseuxSeries::monomial(q, x_exp, key, ram);
    return acc == PuiseuxSeries::kExact ? m : m.truncated(acc);
}

}  // namespace

SplitForm x_split(const LinearForm& form, int crossing_bound) {
    SplitForm out;
    out.pos.add_known(form.known().x_part(PartSel::Pos));
    out.zero.add_known(form.known().x_part(PartSel::Zero));
    out.neg.add_known(form.known().x_part(PartSel::Neg));
    for (const auto& [tag, c] : form.terms()) {
        if (tag.kind == UnknownTag::Kind::Point) {
            out.pos.add_term(tag, c.x_part(PartSel::Pos));
            out.zero.add_term(tag, c.x_part(PartSel::Zero));
            out.neg.add_term(tag, c.x_part(PartSel::Neg));
            continue;
        }
        bool right_sided = tag.kind != UnknownTag::Kind::Diag;
        if (right_sided) {
            // c * F has x-degree >= min-exponent of c; slices at x^e, e <= 0,
            // involve the points F_i with coefficient [x^(e-i)] c.
            out.pos.add_term(tag, c);
            for (const auto& [key, poly] : c.terms()) {
                for (const auto& [eps, q] : poly.terms()) {
                    if (eps > 0) continue;
                    if (-eps > crossing_bound)
                        raise(ErrorCode::UnboundedSupport,
                              "crossing overhang exceeds bound while splitting " + tag.str());
                    for (int i = 0; i <= -eps; ++i) {
                        int e = eps + i;
                        PuiseuxSeries piece = capped_monomial(q, e, key, c.ram(), c.acc());
                        out.pos.add_term(point_on(tag, i), -piece);
                        (e == 0 ? out.zero : out.neg).add_term(point_on(tag, i), piece);
                    }
                }
            }
        } else {
            out.neg.add_term(tag, c);
            for (const auto& [key, poly] : c.terms()) {
                for (const auto& [eps, q] : poly.terms()) {
                    if (eps < 0) continue;
                    if (eps > crossing_bound)
                        raise(ErrorCode::UnboundedSupport,
                              "crossing overhang exceeds bound while splitting " + tag.str());
                    for (int i = 0; i <= eps; ++i) {
                        int e = eps - i;
                        PuiseuxSeries piece = capped_monomial(q, e, key, c.ram(), c.acc());
                        out.neg.add_term(point_on(tag, i), -piece);
                        (e == 0 ? out.zero : out.pos).add_term(point_on(tag, i), piece);
                    }
                }
            }
        }
    }
    return out;
}

LinearForm x_slice(const LinearForm& form, int e, int crossing_bound) {
    auto slice_series = [&](const PuiseuxSeries& s) {
        PuiseuxSeries out = PuiseuxSeries::zero_with_acc(s.acc(), s.ram());
        for (const auto& [key, poly] : s.terms()) {
            Rational q = poly.coeff(e);
            if (!is_zero(q)) out = out + PuiseuxSeries::monomial(q, 0, key, s.ram());
        }
        return out;
    };
    LinearForm out;
    out.add_known(slice_series(form.known()));
    for (const auto& [tag, c] : form.terms()) {
        if (tag.kind == UnknownTag::Kind::Point) {
            out.add_term(tag, slice_series(c));
            continue;
        }
        bool right_sided = tag.kind != UnknownTag::Kind::Diag;
        for (const auto& [key, poly] : c.terms()) {
            for (const auto& [eps, q] : poly.terms()) {
                int i = right_sided ? e - eps : eps - e;
                if (i < 0) continue;
                if (i > crossing_bound)
                    raise(ErrorCode::UnboundedSupport,
                          "slice reach exceeds bound on " + tag.str());
                out.add_term(point_on(tag, i), capped_monomial(q, 0, key, c.ram(), c.acc()));
            }
        }
    }
    return out;
}

LinearForm substitute_root(const LinearForm& form, const PuiseuxSeries& root) {
    LinearForm out;
    out.add_known(form.known().substituted_x(root));
    for (const auto& [tag, c] : form.terms()) {
        if (tag.is_function()) {
            PuiseuxSeries at_root = c.substituted_x(root);
            if (!at_root.is_zero_value())
                raise(ErrorCode::KernelNotCancelled,
                      "coefficient of " + tag.str() + " does not vanish at the kernel branch");
            continue;
        }
        out.add_term(tag, c.substituted_x(root));
    }
    return out;
}

PuiseuxSeries system_determinant(const std::vector<LinearForm>& rows,
                                 const std::vector<UnknownTag>& unknowns) {
    size_t n = unknowns.size();
    if (rows.size() != n) throw std::logic_error("system_determinant: non-square system");
    std::vector<std::vector<PuiseuxSeries>> m(n, std::vector<PuiseuxSeries>(n));
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) m[r][c] = rows[r].coeff(unknowns[c]);

    // Laplace expansion along the first column, recursing on row subsets.
    std::vector<size_t> live(n);
    for (size_t i = 0; i < n; ++i) live[i] = i;
    auto det = [&](auto&& self, std::vector<size_t> rs, size_t col) -> PuiseuxSeries {
        if (rs.size() == 1) return m[rs[0]][col];
        PuiseuxSeries acc;
        for (size_t k = 0; k < rs.size(); ++k) {
            const PuiseuxSeries& pivot = m[rs[k]][col];
            if (pivot.is_zero_value() && pivot.is_exact()) continue;
            std::vector<size_t> rest;
            rest.reserve(rs.size() - 1);
            for (size_t j = 0; j < rs.size(); ++j)
                if (j != k) rest.push_back(rs[j]);
            PuiseuxSeries minor = self(self, std::move(rest), col + 1);
            PuiseuxSeries part = pivot * minor;
            acc = (k % 2 == 0) ? acc + part : acc - part;
        }
        return acc;
    };
    return det(det, live, 0);
}

std::map<UnknownTag, PuiseuxSeries> solve_square_system(
    const std::vector<LinearForm>& rows, const std::vector<UnknownTag>& unknowns) {
    for (const auto& row : rows)
        for (const auto& [tag, c] : row.terms())
            if (std::find(unknowns.begin(), unknowns.end(), tag) == unknowns.end())
                raise(ErrorCode::UnknownSetMismatch,
                      "system row mentions " + tag.str() + " outside the unknown set");
    PuiseuxSeries det = system_determinant(rows, unknowns);
    if (det.is_zero_value())
        raise(ErrorCode::SingularSystem, "system determinant vanishes through its accuracy");
    PuiseuxSeries det_inv = det.inverted();
    std::map<UnknownTag, PuiseuxSeries> out;
    for (size_t j = 0; j < unknowns.size(); ++j) {
        std::vector<LinearForm> swapped = rows;
        for (auto& row : swapped) {
            LinearForm r;
            r.add_known(row.known());
            for (const auto& [tag, c] : row.terms()) {
                if (tag == unknowns[j]) continue;
                r.add_term(tag, c);
            }
            // Replace column j by the negated known side (M u = -known).
            r.add_term(unknowns[j], -row.known());
            row = r;
        }
        out[unknowns[j]] = system_determinant(swapped, unknowns) * det_inv;
    }
    return out;
}

}  // namespace qwalk
