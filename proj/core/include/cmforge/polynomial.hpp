#pragma once

#include <cmforge/numerics.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmforge {

// Dense univariate polynomial with integer coefficients, stored low to high.
// The zero polynomial has no coefficients; trailing zeros are always trimmed.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial constant(const Integer& c);
    static IntPolynomial monomial(const Integer& c, std::size_t degree);
    // X - root
    static IntPolynomial linear(const Integer& root);

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Integer>& coefficients() const { return c_; }
    // Zero beyond the degree.
    Integer coeff(std::size_t i) const;
    const Integer& leading() const;
    bool is_monic() const { return !is_zero() && leading() == 1; }

    IntPolynomial& operator+=(const IntPolynomial& rhs);
    IntPolynomial& operator-=(const IntPolynomial& rhs);
    IntPolynomial& operator*=(const Integer& k);
    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(IntPolynomial a, const Integer& k) { return a *= k; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial operator-() const;
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

    Integer evaluate(const Integer& x) const;
    numerics::BigComplex evaluate(const numerics::BigComplex& x) const;
    IntPolynomial derivative() const;

    // Quotient and remainder by a monic divisor, exact over the integers.
    std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& divisor) const;

    // Human-readable form such as "X^3 + 3491750*X^2 - 5151296875*X + 12771880859375".
    std::string to_string(std::string_view var = "X") const;

private:
    void trim();
    std::vector<Integer> c_;
};

// Bivariate integer polynomial sum c_{ij} X^i Y^j. Stored as one polynomial
// in Y per power of X.
class BiPolynomial {
public:
    BiPolynomial() = default;
    explicit BiPolynomial(std::vector<IntPolynomial> rows);

    bool is_zero() const { return rows_.empty(); }
    long degree_x() const { return static_cast<long>(rows_.size()) - 1; }
    long degree_y() const;
    const std::vector<IntPolynomial>& rows() const { return rows_; }
    // Coefficient of X^i as a polynomial in Y.
    IntPolynomial row(std::size_t i) const;
    Integer coeff(std::size_t i, std::size_t j) const;
    void set_coeff(std::size_t i, std::size_t j, const Integer& value);

    // Nonzero coefficients as (i, j, c), sorted by i then j.
    struct Term {
        std::size_t i;
        std::size_t j;
        Integer c;
    };
    std::vector<Term> terms() const;

    BiPolynomial swapped() const;
    // P(X, X)
    IntPolynomial diagonal() const;
    // P(X, y) for an integer y.
    IntPolynomial specialize_y(const Integer& y) const;
    // Coefficients reduced into [0, m).
    BiPolynomial reduced_mod(const Integer& m) const;

    numerics::BigComplex evaluate(const numerics::BigComplex& x,
                                  const numerics::BigComplex& y) const;

    friend BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b);
    friend BiPolynomial operator-(const BiPolynomial& a, const BiPolynomial& b);
    friend bool operator==(const BiPolynomial&, const BiPolynomial&) = default;

    // "X^3 - X^2*Y^2 + 1488*X^2*Y + ..." ordered by X then Y degree, descending.
    std::string to_string() const;

private:
    void trim();
    std::vector<IntPolynomial> rows_;
};

// Coefficients (low to high) of the monic polynomial prod (X - r), built by a
// balanced product tree.
std::vector<numerics::BigComplex> poly_from_roots(std::span<const numerics::BigComplex> roots);

numerics::BigComplex evaluate(std::span<const numerics::BigComplex> coeffs,
                              const numerics::BigComplex& x);

} // namespace cmforge
