#pragma once

#include <cmforge/numerics.hpp>
#include <cmforge/polynomial.hpp>

#include <string>
#include <vector>

namespace cmforge::transform {

// Integer matrix (a b; c d) acting on bases by (w1, w2) -> (a w1 + b w2, c w1 + d w2).
struct PrimMatrix {
    long a = 1;
    long b = 0;
    long c = 0;
    long d = 1;

    long det() const { return a * d - b * c; }
    bool is_primitive() const;
    std::string to_string() const;
    friend bool operator==(const PrimMatrix&, const PrimMatrix&) = default;
};

// Upper triangular (a b; 0 d) with ad = s, 0 <= b < d, gcd(a, b, d) = 1.
std::vector<PrimMatrix> representatives(long s);

// s prod_{l | s} (1 + 1/l)
long psi(long s);

inline constexpr long kMaxLevel = 7;

// (psi(s) + 1)(s + 1) + 16 coefficients of j.
long default_budget(long s);
// Smallest budget that leaves a positive-exponent coefficient to validate.
long minimum_budget(long s);

// prod_S (X - j(S w)) as a polynomial in X and Y = j(w), built from exact
// q-series. budget = 0 selects default_budget(s). Throws UnsupportedLevel for
// s outside 1..7 and BudgetTooSmall when the series run out.
BiPolynomial modular_polynomial_J(long s, long budget = 0);

// prod_S (X - phi_S(w)) with phi_S = s^12 Delta(S w) / Delta(w).
BiPolynomial phi_polynomial(long s, long budget = 0);

// J_p == (X^p - Y)(X - Y^p) mod m, coefficientwise.
bool kronecker_congruence_holds(const BiPolynomial& J, long p, long m);
bool kronecker_congruence_check(long p, long budget = 0);

// Numeric phi_S(tau) = s^12 (c tau + d)^-12 Delta(S tau) / Delta(tau) for the
// basis (tau, 1). Non-primitive S = r S0 gives r^12 phi_{S0} automatically.
numerics::BigComplex phi_value(const PrimMatrix& S, const numerics::BigComplex& tau, numerics::Bits prec);

// prod over representatives(s) of phi_S(tau).
numerics::BigComplex phi_product(long s, const numerics::BigComplex& tau, numerics::Bits prec);
// Leading coefficient of J_s(X, X) is +-1. Throws SquareLevel for square s.
bool leading_coefficient_check(long s, long budget = 0);

// Constant term of Phi_s against prod_S a^12; the sign is reported, not assumed.
struct PhiConstantTerm {
    Integer constant;
    Integer product_a12;
    int sign = 0;
    bool magnitude_matches = false;
    // Phi_s(0, Y) has no Y-dependence.
    bool constant_in_y = false;
};
PhiConstantTerm phi_constant_term(long s, long budget = 0);
PhiConstantTerm phi_constant_term(const BiPolynomial& phi, long s);

} // namespace cmforge::transform
