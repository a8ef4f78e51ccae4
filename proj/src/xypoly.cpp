#include "xypoly.hpp"

#include <sstream>

#include "errors.hpp"

namespace qwalk {

namespace {
const Rational kZero(0);
}

XYPoly::XYPoly(const Rational& constant) {
    if (!qwalk::is_zero(constant)) terms_[{0, 0}] = constant;
}

XYPoly XYPoly::monomial(const Rational& coeff, int x_exp, int y_exp) {
    XYPoly p;
    if (!qwalk::is_zero(coeff)) p.terms_[{x_exp, y_exp}] = coeff;
    return p;
}

XYPoly XYPoly::from_x_poly(const LaurentPoly& poly) {
    XYPoly p;
    for (const auto& [exp, coeff] : poly.terms()) p.terms_[{exp, 0}] = coeff;
    return p;
}

const Rational& XYPoly::coeff(int x_exp, int y_exp) const {
    auto it = terms_.find({x_exp, y_exp});
    return it == terms_.end() ? kZero : it->second;
}

void XYPoly::add_term(int x_exp, int y_exp, const Rational& value) {
    if (qwalk::is_zero(value)) return;
    Key key{x_exp, y_exp};
    auto [it, inserted] = terms_.emplace(key, value);
    if (!inserted) {
        it->second += value;
        if (qwalk::is_zero(it->second)) terms_.erase(it);
    }
}

XYPoly XYPoly::operator-() const {
    XYPoly out;
    for (const auto& [key, coeff] : terms_) out.terms_[key] = -coeff;
    return out;
}

XYPoly XYPoly::operator+(const XYPoly& other) const {
    XYPoly out(*this);
    for (const auto& [key, coeff] : other.terms_) out.add_term(key.first, key.second, coeff);
    return out;
}

XYPoly XYPoly::operator-(const XYPoly& other) const {
    XYPoly out(*this);
    for (const auto& [key, coeff] : other.terms_) out.add_term(key.first, key.second, -coeff);
    return out;
}

XYPoly XYPoly::operator*(const XYPoly& other) const {
    XYPoly out;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : other.terms_)
            out.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
    return out;
}

XYPoly XYPoly::scaled(const Rational& factor) const {
    XYPoly out;
    if (qwalk::is_zero(factor)) return out;
    for (const auto& [key, coeff] : terms_) out.terms_[key] = coeff * factor;
    return out;
}

XYPoly XYPoly::substituted(const MonomialMap& map) const {
    XYPoly out;
    for (const auto& [key, coeff] : terms_) {
        int xe = key.first * map.x.x_exp + key.second * map.y.x_exp;
        int ye = key.first * map.x.y_exp + key.second * map.y.y_exp;
        out.add_term(xe, ye, coeff);
    }
    return out;
}

int XYPoly::min_y_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "min_y_exp of zero polynomial");
    int out = terms_.begin()->first.second;
    for (const auto& [key, coeff] : terms_) out = std::min(out, key.second);
    return out;
}

int XYPoly::max_y_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "max_y_exp of zero polynomial");
    int out = terms_.begin()->first.second;
    for (const auto& [key, coeff] : terms_) out = std::max(out, key.second);
    return out;
}

LaurentPoly XYPoly::y_slice(int y_exp) const {
    LaurentPoly out;
    for (const auto& [key, coeff] : terms_)
        if (key.second == y_exp) out.add_term(key.first, coeff);
    return out;
}

std::string XYPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(coeff) << ")";
        if (key.first != 0) os << "*x^" << key.first;
        if (key.second != 0) os << "*y^" << key.second;
    }
    return os.str();
}

TriPoly::TriPoly(const XYPoly& constant_in_t) {
    if (!constant_in_t.is_zero()) terms_[0] = constant_in_t;
}

TriPoly TriPoly::t_term(int t_deg, const XYPoly& coeff) {
    TriPoly p;
    if (!coeff.is_zero()) p.terms_[t_deg] = coeff;
    return p;
}

XYPoly TriPoly::coeff(int t_deg) const {
    auto it = terms_.find(t_deg);
    return it == terms_.end() ? XYPoly() : it->second;
}

void TriPoly::add_term(int t_deg, const XYPoly& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = terms_.emplace(t_deg, value);
    if (!inserted) {
        it->second = it->second + value;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TriPoly TriPoly::operator-() const {
    TriPoly out;
    for (const auto& [deg, coeff] : terms_) out.terms_[deg] = -coeff;
    return out;
}

TriPoly TriPoly::operator+(const TriPoly& other) const {
    TriPoly out(*this);
    for (const auto& [deg, coeff] : other.terms_) out.add_term(deg, coeff);
    return out;
}

TriPoly TriPoly::operator-(const TriPoly& other) const {
    TriPoly out(*this);
    for (const auto& [deg, coeff] : other.terms_) out.add_term(deg, -coeff);
    return out;
}

TriPoly TriPoly::operator*(const TriPoly& other) const {
    TriPoly out;
    for (const auto& [d1, c1] : terms_)
        for (const auto& [d2, c2] : other.terms_) out.add_term(d1 + d2, c1 * c2);
    return out;
}

TriPoly TriPoly::scaled(const Rational& factor) const {
    TriPoly out;
    if (qwalk::is_zero(factor)) return out;
    for (const auto& [deg, coeff] : terms_) out.terms_[deg] = coeff.scaled(factor);
    return out;
}

TriPoly TriPoly::substituted(const MonomialMap& map) const {
    TriPoly out;
    for (const auto& [deg, coeff] : terms_) {
        XYPoly image = coeff.substituted(map);
        if (!image.is_zero()) out.terms_[deg] = image;
    }
    return out;
}

int TriPoly::min_y_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "min_y_exp of zero polynomial");
    bool found = false;
    int out = 0;
    for (const auto& [deg, coeff] : terms_) {
        int v = coeff.min_y_exp();
        out = found ? std::min(out, v) : v;
        found = true;
    }
    return out;
}

int TriPoly::max_y_exp() const {
    if (terms_.empty()) raise(ErrorCode::SelectorOutOfRange, "max_y_exp of zero polynomial");
    bool found = false;
    int out = 0;
    for (const auto& [deg, coeff] : terms_) {
        int v = coeff.max_y_exp();
        out = found ? std::max(out, v) : v;
        found = true;
    }
    return out;
}

PuiseuxSeries TriPoly::y_slice(int y_exp) const {
    PuiseuxSeries out;
    for (const auto& [deg, coeff] : terms_) {
        LaurentPoly slice = coeff.y_slice(y_exp);
        if (!slice.is_zero())
            out = out + PuiseuxSeries::from_x_poly(slice) *
                            PuiseuxSeries::monomial(Rational(1), 0, deg);
    }
    return out;
}

std::string TriPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [deg, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << coeff.str() << "]";
        if (deg != 0) os << "*t^" << deg;
    }
    return os.str();
}

}  // namespace qwalk
