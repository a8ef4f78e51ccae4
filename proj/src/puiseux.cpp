#include "puiseux.hpp"

#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace qwalk {

namespace {

const LaurentPoly kZeroPoly;

int64_t sat(int64_t v) {
    if (v > PuiseuxSeries::kExact) return PuiseuxSeries::kExact;
    if (v < -PuiseuxSeries::kExact) return -PuiseuxSeries::kExact;
    return v;
}

}  // namespace

PuiseuxSeries PuiseuxSeries::zero_with_acc(int acc, int ram) {
    PuiseuxSeries s;
    s.ram_ = ram;
    s.acc_ = acc;
    return s;
}

PuiseuxSeries PuiseuxSeries::constant(const Rational& value) {
    return from_x_poly(LaurentPoly(value));
}

PuiseuxSeries PuiseuxSeries::from_x_poly(const LaurentPoly& poly) {
    PuiseuxSeries s;
    if (!poly.is_zero()) s.terms_[0] = poly;
    return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coeff, int x_exp, int t_num, int ram) {
    PuiseuxSeries s;
    s.ram_ = ram;
    if (!qwalk::is_zero(coeff)) s.terms_[t_num] = LaurentPoly::monomial(coeff, x_exp);
    return s;
}

std::optional<int> PuiseuxSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

const LaurentPoly& PuiseuxSeries::coeff(int key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? kZeroPoly : it->second;
}

LaurentPoly PuiseuxSeries::coeff_q(int num, int den) const {
    // Want the coefficient of t^(num/den) = t^(key/ram).
    int64_t scaled = static_cast<int64_t>(num) * ram_;
    if (scaled % den != 0) return kZeroPoly;
    int64_t key = scaled / den;
    if (key > acc_ && acc_ != kExact)
        raise(ErrorCode::PrecisionExhausted,
              "coefficient request beyond accurate order " + std::to_string(acc_) + "/" +
                  std::to_string(ram_));
    auto it = terms_.find(static_cast<int>(key));
    return it == terms_.end() ? kZeroPoly : it->second;
}

PuiseuxSeries PuiseuxSeries::truncated(int new_acc) const {
    PuiseuxSeries out;
    out.ram_ = ram_;
    out.acc_ = std::min(acc_, new_acc);
    for (const auto& [key, poly] : terms_) {
        if (key > out.acc_) break;
        out.terms_[key] = poly;
    }
    return out;
}

int PuiseuxSeries::saturating_mul(int order) const {
    return static_cast<int>(sat(static_cast<int64_t>(order) * ram_));
}

PuiseuxSeries PuiseuxSeries::re_rammed(int factor) const {
    if (factor == 1) return *this;
    PuiseuxSeries out;
    out.ram_ = ram_ * factor;
    out.acc_ = static_cast<int>(sat(static_cast<int64_t>(acc_) * factor));
    for (const auto& [key, poly] : terms_) out.terms_[key * factor] = poly;
    return out;
}

PuiseuxSeries PuiseuxSeries::ram_normalized() const {
    if (ram_ == 1) return *this;
    int g = ram_;
    for (const auto& [key, poly] : terms_) {
        g = std::gcd(g, std::abs(key));
        if (g == 1) return *this;
    }
    if (acc_ != kExact) g = std::gcd(g, std::abs(acc_));
    if (g <= 1) return *this;
    PuiseuxSeries out;
    out.ram_ = ram_ / g;
    out.acc_ = acc_ == kExact ? kExact : acc_ / g;
    for (const auto& [key, poly] : terms_) out.terms_[key / g] = poly;
    return out;
}

void PuiseuxSeries::unify(PuiseuxSeries& a, PuiseuxSeries& b) {
    if (a.ram_ == b.ram_) return;
    int l = std::lcm(a.ram_, b.ram_);
    a = a.re_rammed(l / a.ram_);
    b = b.re_rammed(l / b.ram_);
}

void PuiseuxSeries::insert_term(int key, const LaurentPoly& value) {
    if (value.is_zero() || key > acc_) return;
    terms_[key] = value;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
    PuiseuxSeries out;
    out.ram_ = ram_;
    out.acc_ = acc_;
    for (const auto& [key, poly] : terms_) out.terms_[key] = -poly;
    return out;
}

PuiseuxSeries PuiseuxSeries::operator+(const PuiseuxSeries& other) const {
    PuiseuxSeries a(*this), b(other);
    unify(a, b);
    PuiseuxSeries out;
    out.ram_ = a.ram_;
    out.acc_ = std::min(a.acc_, b.acc_);
    for (const auto& [key, poly] : a.terms_) {
        if (key > out.acc_) break;
        out.terms_[key] = poly;
    }
    for (const auto& [key, poly] : b.terms_) {
        if (key > out.acc_) break;
        auto [it, inserted] = out.terms_.emplace(key, poly);
        if (!inserted) {
            it->second = it->second + poly;
            if (it->second.is_zero()) out.terms_.erase(it);
        }
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::operator-(const PuiseuxSeries& other) const {
    return *this + (-other);
}

PuiseuxSeries PuiseuxSeries::operator*(const PuiseuxSeries& other) const {
    PuiseuxSeries a(*this), b(other);
    unify(a, b);
    // Guaranteed orders: beyond acc_a the factor a is unknown, contributing at
    // orders > acc_a + val_b, and symmetrically for b.
    int64_t va = a.terms_.empty() ? kExact : a.terms_.begin()->first;
    int64_t vb = b.terms_.empty() ? kExact : b.terms_.begin()->first;
    int64_t acc = std::min(sat(static_cast<int64_t>(a.acc_) + vb),
                           sat(static_cast<int64_t>(b.acc_) + va));
    PuiseuxSeries out;
    out.ram_ = a.ram_;
    out.acc_ = static_cast<int>(sat(acc));
    for (const auto& [k1, p1] : a.terms_) {
        for (const auto& [k2, p2] : b.terms_) {
            int64_t key = static_cast<int64_t>(k1) + k2;
            if (key > out.acc_) break;
            LaurentPoly prod = p1 * p2;
            if (prod.is_zero()) continue;
            auto [it, inserted] = out.terms_.emplace(static_cast<int>(key), prod);
            if (!inserted) {
                it->second = it->second + prod;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    }
    return out;
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& other) const {
    PuiseuxSeries a = ram_normalized();
    PuiseuxSeries b = other.ram_normalized();
    unify(a, b);
    return a.acc_ == b.acc_ && a.terms_ == b.terms_;
}

PuiseuxSeries PuiseuxSeries::scaled(const Rational& factor) const {
    PuiseuxSeries out;
    out.ram_ = ram_;
    out.acc_ = acc_;
    if (qwalk::is_zero(factor)) return out;
    for (const auto& [key, poly] : terms_) out.terms_[key] = poly.scaled(factor);
    return out;
}

PuiseuxSeries PuiseuxSeries::x_part(PartSel sel) const {
    PuiseuxSeries out;
    out.ram_ = ram_;
    out.acc_ = acc_;
    for (const auto& [key, poly] : terms_) {
        LaurentPoly kept = poly.part(sel);
        if (!kept.is_zero()) out.terms_[key] = kept;
    }
    return out;
}

PuiseuxSeries PuiseuxSeries::x_inverted() const {
    PuiseuxSeries out;
    out.ram_ = ram_;
    out.acc_ = acc_;
    for (const auto& [key, poly] : terms_) out.terms_[key] = poly.x_inverted();
    return out;
}

PuiseuxSeries PuiseuxSeries::inverted() const {
    if (terms_.empty())
        raise(ErrorCode::NonMonomialLeadingTerm, "cannot invert the zero series");
    if (acc_ == kExact)
        throw std::logic_error("inverted() requires a truncated operand; truncate first");
    int v = terms_.begin()->first;
    const LaurentPoly& lead = terms_.begin()->second;
    if (!lead.is_monomial())
        raise(ErrorCode::NonMonomialLeadingTerm,
              "leading t-coefficient is not a single monomial: " + lead.str());
    int lead_xexp = lead.min_exp();
    Rational lead_coeff = lead.coeff(lead_xexp);

    // f = L*(1 + h). Invert the unit part order by order, then divide by L.
    int out_acc = static_cast<int>(sat(static_cast<int64_t>(acc_) - 2 * v));
    if (out_acc < -v)
        raise(ErrorCode::PrecisionExhausted, "inversion leaves no accurate orders");
    PuiseuxSeries lead_inv =
        PuiseuxSeries::monomial(Rational(1) / lead_coeff, -lead_xexp, -v, ram_);
    PuiseuxSeries unit = lead_inv * (*this);  // 1 + h, valuation 0
    int unit_acc = unit.acc_;
    std::map<int, LaurentPoly> inv_terms;
    inv_terms[0] = LaurentPoly(Rational(1));
    for (int k = 1; k <= unit_acc && k <= out_acc + v; ++k) {
        LaurentPoly sum;
        for (const auto& [j, hj] : unit.terms_) {
            if (j <= 0) continue;
            if (j > k) break;
            auto it = inv_terms.find(k - j);
            if (it == inv_terms.end()) continue;
            sum = sum + hj * it->second;
        }
        if (!sum.is_zero()) inv_terms[k] = -sum;
    }
    PuiseuxSeries unit_inv;
    unit_inv.ram_ = ram_;
    unit_inv.acc_ = unit_acc;
    unit_inv.terms_ = std::move(inv_terms);
    PuiseuxSeries out = unit_inv * lead_inv;
    out.acc_ = out_acc;
    std::erase_if(out.terms_, [out_acc](const auto& kv) { return kv.first > out_acc; });
    return out;
}

PuiseuxSeries PuiseuxSeries::sqrt() const {
    if (terms_.empty()) {
        if (acc_ == kExact) return *this;
        raise(ErrorCode::NonSquareLeadingTerm, "sqrt of a zero-valued truncated series");
    }
    if (acc_ == kExact)
        throw std::logic_error("sqrt() requires a truncated operand; truncate first");
    int v = terms_.begin()->first;
    const LaurentPoly& lead = terms_.begin()->second;
    if (!lead.is_monomial())
        raise(ErrorCode::NonSquareLeadingTerm,
              "leading t-coefficient is not a single monomial: " + lead.str());
    int lead_xexp = lead.min_exp();
    Rational lead_coeff = lead.coeff(lead_xexp);
    if (v % 2 != 0 || lead_xexp % 2 != 0)
        raise(ErrorCode::NonSquareLeadingTerm,
              "leading monomial has odd exponents (t key " + std::to_string(v) + ", x exp " +
                  std::to_string(lead_xexp) + ")");
    auto root_coeff = exact_sqrt(lead_coeff);
    if (!root_coeff)
        raise(ErrorCode::NonSquareLeadingTerm,
              "leading coefficient " + to_string(lead_coeff) + " is not a rational square");

    // f = L*(1 + h); take sqrt of the unit part order by order.
    PuiseuxSeries lead_inv =
        PuiseuxSeries::monomial(Rational(1) / lead_coeff, -lead_xexp, -v, ram_);
    PuiseuxSeries unit = lead_inv * (*this);
    int unit_acc = unit.acc_;
    std::map<int, LaurentPoly> s_terms;
    s_terms[0] = LaurentPoly(Rational(1));
    for (int k = 1; k <= unit_acc; ++k) {
        LaurentPoly sum;
        for (const auto& [j, sj] : s_terms) {
            if (j == 0 || j >= k) continue;
            auto it = s_terms.find(k - j);
            if (it == s_terms.end()) continue;
            if (k - j < j) break;
            LaurentPoly prod = sj * it->second;
            sum = sum + (j == k - j ? prod : prod + prod);
        }
        LaurentPoly target = unit.coeff(k) - sum;
        if (!target.is_zero()) s_terms[k] = target.scaled(Rational(1, 2));
    }
    PuiseuxSeries unit_root;
    unit_root.ram_ = ram_;
    unit_root.acc_ = unit_acc;
    unit_root.terms_ = std::move(s_terms);
    PuiseuxSeries out =
        unit_root * PuiseuxSeries::monomial(*root_coeff, lead_xexp / 2, v / 2, ram_);
    int out_acc = static_cast<int>(sat(static_cast<int64_t>(acc_) - v / 2));
    out.acc_ = out_acc;
    std::erase_if(out.terms_, [out_acc](const auto& kv) { return kv.first > out_acc; });
    return out;
}

PuiseuxSeries PuiseuxSeries::substituted_x(const PuiseuxSeries& root) const {
    PuiseuxSeries a(*this), r(root);
    unify(a, r);
    auto rval = r.valuation();
    if (!rval || *rval <= 0)
        raise(ErrorCode::PrecisionExhausted, "substitution root must have positive valuation");
    int v = *rval;

    int pole = 0;
    int max_exp = 0;
    for (const auto& [key, poly] : a.terms_) {
        pole = std::max(pole, -poly.min_exp());
        max_exp = std::max(max_exp, poly.max_exp());
    }
    int64_t out_acc64 =
        std::min(sat(static_cast<int64_t>(a.acc_) - static_cast<int64_t>(v) * pole),
                 static_cast<int64_t>(r.acc_));
    int out_acc = static_cast<int>(sat(out_acc64));
    if (out_acc < 0)
        raise(ErrorCode::PrecisionExhausted,
              "substitution at pole order " + std::to_string(pole) +
                  " exhausts the working order");

    std::map<int, PuiseuxSeries> powers;
    powers[0] = PuiseuxSeries::constant(Rational(1)).re_rammed(r.ram());
    powers[1] = r.truncated(out_acc);
    PuiseuxSeries rinv;
    if (pole > 0) rinv = r.truncated(static_cast<int>(sat(static_cast<int64_t>(out_acc) + 2 * v))).inverted();
    auto power = [&](int e) -> const PuiseuxSeries& {
        if (!powers.count(e)) {
            if (e > 0) {
                int k = e;
                while (!powers.count(k)) --k;
                for (int j = k + 1; j <= e; ++j)
                    powers[j] = (powers[j - 1] * powers[1]).truncated(out_acc);
            } else {
                int k = e;
                while (!powers.count(k)) ++k;
                for (int j = k - 1; j >= e; --j)
                    powers[j] = (powers[j + 1] * rinv).truncated(out_acc);
            }
        }
        return powers[e];
    };

    PuiseuxSeries out = PuiseuxSeries::zero_with_acc(out_acc, a.ram_);
    for (const auto& [key, poly] : a.terms_) {
        for (const auto& [e, c] : poly.terms()) {
            if (static_cast<int64_t>(key) + static_cast<int64_t>(e) * v > out_acc) continue;
            PuiseuxSeries term = power(e).scaled(c);
            // Shift by t^(key/ram).
            PuiseuxSeries shift = PuiseuxSeries::monomial(Rational(1), 0, key, a.ram_);
            out = out + (term * shift).truncated(out_acc);
        }
    }
    out.acc_ = out_acc;
    return out;
}

bool PuiseuxSeries::agrees_with(const PuiseuxSeries& other, int through_num,
                                int through_den) const {
    PuiseuxSeries a(*this), b(other);
    unify(a, b);
    int64_t bound64 = (static_cast<int64_t>(through_num) * a.ram_) / through_den;
    int bound = static_cast<int>(bound64);
    if (a.acc_ < bound || b.acc_ < bound)
        raise(ErrorCode::PrecisionExhausted,
              "agreement check through " + std::to_string(through_num) + "/" +
                  std::to_string(through_den) + " exceeds accurate order");
    for (const auto& [key, poly] : a.terms_) {
        if (key > bound) break;
        if (!(poly == b.coeff(key))) return false;
    }
    for (const auto& [key, poly] : b.terms_) {
        if (key > bound) break;
        if (!(poly == a.coeff(key))) return false;
    }
    return true;
}

std::string PuiseuxSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, poly] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << poly.str() << "]";
        if (key != 0) {
            os << "*t^";
            if (ram_ == 1)
                os << key;
            else
                os << "(" << key << "/" << ram_ << ")";
        }
    }
    if (first) os << "0";
    if (acc_ != kExact) os << " + O(t^(" << acc_ + 1 << "/" << ram_ << "))";
    return os.str();
}

}  // namespace qwalk
