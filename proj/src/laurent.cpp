#include "laurent.hpp"

#include <sstream>

#include "errors.hpp"

namespace qwalk {

namespace {
const Rational kZero(0);
}

LaurentPoly::LaurentPoly(const Rational& constant) {
    if (!qwalk::is_zero(constant)) terms_[0] = constant;
}

LaurentPoly LaurentPoly::monomial(const Rational& coeff, int exp) {
    LaurentPoly p;
    if (!qwalk::is_zero(coeff)) p.terms_[exp] = coeff;
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "min_exp of zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& LaurentPoly::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? kZero : it->second;
}

void LaurentPoly::set(int exp, const Rational& value) {
    if (qwalk::is_zero(value))
        terms_.erase(exp);
    else
        terms_[exp] = value;
}

void LaurentPoly::add_term(int exp, const Rational& value) {
    if (qwalk::is_zero(value)) return;
    auto [it, inserted] = terms_.emplace(exp, value);
    if (!inserted) {
        it->second += value;
        if (qwalk::is_zero(it->second)) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [exp, coeff] : terms_) out.terms_[exp] = -coeff;
    return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& other) const {
    LaurentPoly out(*this);
    for (const auto& [exp, coeff] : other.terms_) out.add_term(exp, coeff);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& other) const {
    LaurentPoly out(*this);
    for (const auto& [exp, coeff] : other.terms_) out.add_term(exp, -coeff);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& other) const {
    LaurentPoly out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : other.terms_) out.add_term(e1 + e2, c1 * c2);
    return out;
}

LaurentPoly LaurentPoly::scaled(const Rational& factor) const {
    LaurentPoly out;
    if (qwalk::is_zero(factor)) return out;
    for (const auto& [exp, coeff] : terms_) out.terms_[exp] = coeff * factor;
    return out;
}

LaurentPoly LaurentPoly::shifted(int exp_delta) const {
    LaurentPoly out;
    for (const auto& [exp, coeff] : terms_) out.terms_[exp + exp_delta] = coeff;
    return out;
}

LaurentPoly LaurentPoly::x_inverted() const {
    LaurentPoly out;
    for (const auto& [exp, coeff] : terms_) out.terms_[-exp] = coeff;
    return out;
}

Rational LaurentPoly::evaluated(const Rational& value) const {
    Rational out(0);
    for (const auto& [exp, coeff] : terms_) out += coeff * rational_pow(value, exp);
    return out;
}

LaurentPoly LaurentPoly::part(PartSel sel) const {
    LaurentPoly out;
    for (const auto& [exp, coeff] : terms_) {
        bool keep = false;
        switch (sel) {
            case PartSel::Pos: keep = exp > 0; break;
            case PartSel::Zero: keep = exp == 0; break;
            case PartSel::Neg: keep = exp < 0; break;
            case PartSel::Geq: keep = exp >= 0; break;
            case PartSel::Leq: keep = exp <= 0; break;
        }
        if (keep) out.terms_[exp] = coeff;
    }
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(coeff) << ")";
        if (exp != 0) os << "*x^" << exp;
    }
    return os.str();
}

}  // namespace qwalk
