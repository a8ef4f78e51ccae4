// Truncated Puiseux series in t whose coefficients are Laurent polynomials in x.
//
// A series holds terms c_k(x) * t^(k/ram) for integer keys k with k <= acc.
// `acc` is the accurate order in ramified units: every coefficient with key
// <= acc is exactly right (absent means zero), nothing is claimed beyond it.
// Exact values (polynomials) carry the sentinel accuracy kExact.
#pragma once

#include <map>
#include <optional>
#include <string>

#include "laurent.hpp"

namespace qwalk {

class PuiseuxSeries {
  public:
    static constexpr int kExact = 1 << 28;

    PuiseuxSeries() = default;

    static PuiseuxSeries zero_with_acc(int acc, int ram = 1);
    static PuiseuxSeries constant(const Rational& value);
    static PuiseuxSeries from_x_poly(const LaurentPoly& poly);
    static PuiseuxSeries monomial(const Rational& coeff, int x_exp, int t_num, int ram = 1);

    int ram() const { return ram_; }
    int acc() const { return acc_; }
    bool is_exact() const { return acc_ == kExact; }
    bool is_zero_value() const { return terms_.empty(); }
    std::optional<int> valuation() const;  // ramified units

    const std::map<int, LaurentPoly>& terms() const { return terms_; }
    const LaurentPoly& coeff(int key) const;
    // Coefficient of t^(num/den); zero if that exponent is off this series' grid.
    LaurentPoly coeff_q(int num, int den) const;

    PuiseuxSeries truncated(int new_acc) const;
    PuiseuxSeries truncated_order(int order) const { return truncated(saturating_mul(order)); }
    PuiseuxSeries re_rammed(int factor) const;
    PuiseuxSeries ram_normalized() const;

    PuiseuxSeries operator-() const;
    PuiseuxSeries operator+(const PuiseuxSeries& other) const;
    PuiseuxSeries operator-(const PuiseuxSeries& other) const;
    PuiseuxSeries operator*(const PuiseuxSeries& other) const;
    bool operator==(const PuiseuxSeries& other) const;

    PuiseuxSeries scaled(const Rational& factor) const;
    PuiseuxSeries x_part(PartSel sel) const;
    PuiseuxSeries x_inverted() const;

    // Requires a single-monomial lowest coefficient and finite accuracy.
    PuiseuxSeries inverted() const;
    // Requires an even-exponent perfect-square leading monomial.
    PuiseuxSeries sqrt() const;
    // Substitutes x -> root(t). The root must have positive valuation, and the
    // negative x-support of this series' kept coefficients must be bounded.
    PuiseuxSeries substituted_x(const PuiseuxSeries& root) const;

    // True when both series are accurate through num/den and agree there.
    bool agrees_with(const PuiseuxSeries& other, int through_num, int through_den = 1) const;

    std::string str() const;

  private:
    void insert_term(int key, const LaurentPoly& value);
    int saturating_mul(int order) const;
    static void unify(PuiseuxSeries& a, PuiseuxSeries& b);

    int ram_ = 1;
    int acc_ = kExact;
    std::map<int, LaurentPoly> terms_;
};

}  // namespace qwalk
