// Laurent polynomials in x and y, and polynomials in t with such coefficients.
// These stay fully exact; the orbit identities are checked in this ring.
#pragma once

#include <map>
#include <string>
#include <utility>

#include "laurent.hpp"
#include "puiseux.hpp"
#include "rational.hpp"

namespace qwalk {

// Image of a variable under a monomial substitution, as exponents of (x, y).
struct MonomialImage {
    int x_exp = 0;
    int y_exp = 0;
};

// Substitution (x, y) -> (monomial, monomial), e.g. the orbit element
// (1/(xy), y) is {x -> {-1,-1}, y -> {0,1}}.
struct MonomialMap {
    MonomialImage x;
    MonomialImage y;
};

class XYPoly {
  public:
    using Key = std::pair<int, int>;  // (x exponent, y exponent)

    XYPoly() = default;
    explicit XYPoly(const Rational& constant);
    static XYPoly monomial(const Rational& coeff, int x_exp, int y_exp);
    static XYPoly from_x_poly(const LaurentPoly& poly);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }
    const Rational& coeff(int x_exp, int y_exp) const;

    void add_term(int x_exp, int y_exp, const Rational& value);

    XYPoly operator-() const;
    XYPoly operator+(const XYPoly& other) const;
    XYPoly operator-(const XYPoly& other) const;
    XYPoly operator*(const XYPoly& other) const;
    bool operator==(const XYPoly& other) const { return terms_ == other.terms_; }

    XYPoly scaled(const Rational& factor) const;
    XYPoly substituted(const MonomialMap& map) const;

    int min_y_exp() const;  // requires nonzero
    int max_y_exp() const;  // requires nonzero
    LaurentPoly y_slice(int y_exp) const;

    std::string str() const;

  private:
    std::map<Key, Rational> terms_;
};

class TriPoly {
  public:
    TriPoly() = default;
    explicit TriPoly(const XYPoly& constant_in_t);
    static TriPoly t_term(int t_deg, const XYPoly& coeff);

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, XYPoly>& terms() const { return terms_; }
    XYPoly coeff(int t_deg) const;

    void add_term(int t_deg, const XYPoly& value);

    TriPoly operator-() const;
    TriPoly operator+(const TriPoly& other) const;
    TriPoly operator-(const TriPoly& other) const;
    TriPoly operator*(const TriPoly& other) const;
    bool operator==(const TriPoly& other) const { return terms_ == other.terms_; }

    TriPoly scaled(const Rational& factor) const;
    TriPoly substituted(const MonomialMap& map) const;

    int min_y_exp() const;
    int max_y_exp() const;
    // Coefficient of y^k as an exact series in t with x-Laurent coefficients.
    PuiseuxSeries y_slice(int y_exp) const;

    std::string str() const;

  private:
    std::map<int, XYPoly> terms_;
};

}  // namespace qwalk
