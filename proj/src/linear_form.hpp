#pragma once

#include <map>
#include <string>
#include <vector>

#include "puiseux.hpp"

namespace qwalk {

// Labels for the unknown boundary data of a walk model, as they appear in
// linear relations produced while solving. Tags name either a scalar
// generating function or a univariate one (a function of x):
//   Point(i, j)  scalar: walks ending at the fixed lattice point (i, j)
//   LineY(k)     function: sum over i of Q_{i,k} x^i        (x-support >= 0)
//   LineX(k)     function: sum over j of Q_{k,j} x^j        (x-support >= 0)
//   Diag(k)      function: sum over i of Q_{i,i+k} x^{-i}   (x-support <= 0)
// LineY(0) is the x-axis section Q(x,0); LineX(0) is the y-axis section
// Q(0,y) written in the variable x; Diag(k) is the k-th diagonal section
// evaluated at 1/x, which is how it enters every relation here.
struct UnknownTag {
    enum class Kind { Point, LineY, LineX, Diag };

    Kind kind = Kind::Point;
    int i = 0;
    int j = 0;

    static UnknownTag point(int i, int j) { return {Kind::Point, i, j}; }
    static UnknownTag line_y(int k) { return {Kind::LineY, k, 0}; }
    static UnknownTag line_x(int k) { return {Kind::LineX, k, 0}; }
    static UnknownTag diag(int k) { return {Kind::Diag, k, 0}; }

    bool is_function() const { return kind != Kind::Point; }
    auto operator<=>(const UnknownTag&) const = default;
    std::string str() const;
};

// One linear relation  known + sum over tags of coeff(tag) * value(tag) = 0,
// with series coefficients. Zero coefficients are never stored.
class LinearForm {
  public:
    LinearForm() = default;
    explicit LinearForm(PuiseuxSeries known) : known_(std::move(known)) {}

    const PuiseuxSeries& known() const { return known_; }
    const std::map<UnknownTag, PuiseuxSeries>& terms() const { return terms_; }
    bool has(const UnknownTag& tag) const { return terms_.count(tag) != 0; }
    const PuiseuxSeries& coeff(const UnknownTag& tag) const;

    void add_known(const PuiseuxSeries& s);
    void add_term(const UnknownTag& tag, const PuiseuxSeries& coeff);

    LinearForm operator+(const LinearForm& other) const;
    LinearForm operator-(const LinearForm& other) const;
    LinearForm operator-() const;
    LinearForm scaled(const PuiseuxSeries& factor) const;
    LinearForm scaled(const Rational& factor) const;
    LinearForm truncated(int new_acc) const;

    // True when every stored coefficient and the known part vanish.
    bool is_trivial() const;
    // True when no function tags remain and every coefficient is x-free.
    bool is_scalar() const;

    // Replaces a tag by its known value: known += coeff * value.
    LinearForm substituted(const UnknownTag& tag, const PuiseuxSeries& value) const;

    // Flips x -> 1/x in every coefficient and the known part, keeping tags.
    // Afterwards a Diag tag stands for the plain power series of its diagonal
    // section (and a line tag for its section at 1/x); used to bring the
    // negative x-part of a relation into substitutable form.
    LinearForm x_inverted() const;

    std::string str() const;

  private:
    friend LinearForm eliminate(const LinearForm&, const LinearForm&, const UnknownTag&);
    PuiseuxSeries known_;
    std::map<UnknownTag, PuiseuxSeries> terms_;
};

// Cancels `tag` between the two relations:
//   target * using.coeff(tag) - using * target.coeff(tag)
// (cross-multiplied, so no series division is involved).
LinearForm eliminate(const LinearForm& target, const LinearForm& using_form,
                     const UnknownTag& tag);

// The three x-parts of a relation. Splitting a term whose function tag is
// one-sided may cross zero: the overhanging monomial slices are rewritten as
// Point terms (a LineY/LineX coefficient slice at x^e <= 0 contributes points
// on that line; a Diag coefficient slice at x^e >= 0 contributes points on
// that diagonal). Point tags and the known part split coefficient-wise.
struct SplitForm {
    LinearForm pos;   // x-exponents >= 1
    LinearForm zero;  // x-exponent 0
    LinearForm neg;   // x-exponents <= -1
};
SplitForm x_split(const LinearForm& form, int crossing_bound = 64);

// The single x^e slice of a relation, as a scalar relation over Point tags
// (same crossing rules as x_split).
LinearForm x_slice(const LinearForm& form, int e, int crossing_bound = 64);

// Substitutes x -> root(t) in every coefficient. Function-tag coefficients
// must vanish at the root (the kernel-cancellation property); a surviving
// function term raises KernelNotCancelled.
LinearForm substitute_root(const LinearForm& form, const PuiseuxSeries& root);

// Determinant of the coefficient matrix rows[r].coeff(unknowns[c]) by Laplace
// expansion (exact in the truncated-series ring, no division).
PuiseuxSeries system_determinant(const std::vector<LinearForm>& rows,
                                 const std::vector<UnknownTag>& unknowns);

// Solves the square scalar system rows = 0 for `unknowns` by Cramer's rule.
// Rows may mention no tags outside `unknowns`. Raises SingularSystem when the
// determinant vanishes through its accurate order.
std::map<UnknownTag, PuiseuxSeries> solve_square_system(
    const std::vector<LinearForm>& rows, const std::vector<UnknownTag>& unknowns);

}  // namespace qwalk
