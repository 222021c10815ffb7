#pragma once

#include <cmforge/numerics.hpp>
#include <cmforge/polynomial.hpp>
#include <cmforge/quadratic.hpp>

#include <vector>

namespace cmforge::classpoly {

using numerics::Bits;

struct ClassPolynomial {
    long D = 0;
    IntPolynomial poly;
    // Working precision of the accepted run; the run at precision + 64 agreed.
    Bits precision = 0;
    // Largest |value - nearest integer| over all coefficients.
    double max_residual = 0;
};

// Heuristic: pi sqrt|D| sum_f 1/a over reduced forms, in bits, plus a third
// and 64 guard bits.
Bits required_precision(long D);

// j at the basis quotient of each reduced form, in reduced_forms order.
std::vector<numerics::BigComplex> class_invariants(long D, Bits prec);

struct Options {
    Bits precision = 0; // 0 selects required_precision(D)
    Bits cap = 1 << 15;
    // Accept a coefficient when within 2^-tol_bits of an integer.
    long tol_bits = 20;
};

// Monic integer polynomial with roots j(form_to_tau(f)). The rounding is
// repeated at precision + 64 and must agree; on failure the precision is
// doubled up to the cap before RecognitionFailure surfaces.
ClassPolynomial class_polynomial(long D, const Options& opts = {});

// The distinguished norm s > 1 attached to the order.
long s_R(long D);

// Smallest norm >= 2 of a primitive element x + y theta (y != 0, gcd(x, y) = 1).
long primitive_norm(long D);

// H_D divides J_s(X, X) exactly; s = 0 selects primitive_norm(D).
// Throws UnsupportedLevel if s exceeds the supported transformation levels.
bool divides_check(long D, long s = 0);

} // namespace cmforge::classpoly
