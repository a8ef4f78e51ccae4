// Laurent polynomials in one variable x with exact rational coefficients.
#pragma once

#include <map>
#include <string>

#include "rational.hpp"

namespace qwalk {

enum class PartSel { Pos, Zero, Neg, Geq, Leq };

class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& constant);
    static LaurentPoly monomial(const Rational& coeff, int exp);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Exactly one nonzero term.
    bool is_monomial() const { return terms_.size() == 1; }

    int min_exp() const;  // requires nonzero
    int max_exp() const;  // requires nonzero
    const Rational& coeff(int exp) const;
    const std::map<int, Rational>& terms() const { return terms_; }

    void set(int exp, const Rational& value);
    void add_term(int exp, const Rational& value);

    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& other) const;
    LaurentPoly operator-(const LaurentPoly& other) const;
    LaurentPoly operator*(const LaurentPoly& other) const;
    bool operator==(const LaurentPoly& other) const { return terms_ == other.terms_; }

    LaurentPoly scaled(const Rational& factor) const;
    LaurentPoly shifted(int exp_delta) const;
    // x -> 1/x.
    LaurentPoly x_inverted() const;
    // x -> value (exact evaluation).
    Rational evaluated(const Rational& value) const;
    LaurentPoly part(PartSel sel) const;

    std::string str() const;

  private:
    // No stored zero coefficients.
    std::map<int, Rational> terms_;
};

}  // namespace qwalk
