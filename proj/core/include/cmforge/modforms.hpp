#pragma once

// Numeric values of classical modular forms and elliptic functions.
//
// Lattice functions use the basis (w1, w2) with Im(w1 / w2) > 0 and the
// normalization g2 = (2 pi)^4 E4 / 12, g3 = (2 pi)^6 E6 / 216,
// Delta = g2^3 - 27 g3^2 = (2 pi)^12 eta^24 for the lattice <tau, 1>.
// Everything reduces tau into the standard fundamental domain before summing.

#include <cmforge/numerics.hpp>
#include <cmforge/quadratic.hpp>

#include <random>
#include <string>

namespace cmforge::modforms {

using numerics::BigComplex;
using numerics::Bits;

struct ModMatrix {
    long alpha = 1;
    long beta = 0;
    long gamma = 0;
    long delta = 1;

    long det() const { return alpha * delta - beta * gamma; }
    // (alpha tau + beta) / (gamma tau + delta)
    BigComplex apply(const BigComplex& tau) const;
    // gamma tau + delta
    BigComplex automorphy(const BigComplex& tau) const;
    ModMatrix operator-() const { return {-alpha, -beta, -gamma, -delta}; }
    friend ModMatrix operator*(const ModMatrix& x, const ModMatrix& y);
    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
    std::string to_string() const;

    static ModMatrix S() { return {0, -1, 1, 0}; }
    static ModMatrix T(long n = 1) { return {1, n, 0, 1}; }
};

// tau' = M(tau) in the standard fundamental domain.
struct Reduction {
    BigComplex tau;
    ModMatrix M;
};
Reduction reduce_to_fundamental_domain(const BigComplex& tau);

struct CMPoint {
    long D = 0;
    quadratic::Form form;
    BigComplex tau;
    long e = 2;

    static CMPoint from_form(const quadratic::Form& f, Bits prec);
};

// Basis of a lattice; orientation is fixed on use.
struct Lattice {
    BigComplex w1;
    BigComplex w2;
};

// q^{1/24} prod (1 - q^n) by the pentagonal series, directly at tau.
BigComplex eta_value(const BigComplex& tau, Bits prec);
BigComplex j_value(const BigComplex& tau, Bits prec);
// (2 pi)^12 eta^24
BigComplex delta_value(const BigComplex& tau, Bits prec);
// Normalized Eisenstein series E4 = 1 + 240 sum sigma_3(n) q^n and E6.
BigComplex e4_value(const BigComplex& tau, Bits prec);
BigComplex e6_value(const BigComplex& tau, Bits prec);
// Lattice invariants of <tau, 1>.
BigComplex g2_value(const BigComplex& tau, Bits prec);
BigComplex g3_value(const BigComplex& tau, Bits prec);

// k with eta(M tau) = zeta_24^k sqrt(-i (gamma tau + delta)) eta(tau), in [0, 24).
// Precondition: det M = 1 and gamma >= 0 (pass -M otherwise).
long eta_multiplier(const ModMatrix& M);
// |eta(M tau) - eps(M) sqrt(-i (gamma tau + delta)) eta(tau)| / |eta(M tau)|.
// M with gamma < 0 is replaced by -M.
double eta_transformation_residual(const ModMatrix& M, const BigComplex& tau, Bits prec);
// Determinant-one matrix with |gamma|, |delta| <= bound, gamma >= 0.
ModMatrix random_sl2z(std::mt19937_64& rng, long bound);

// Weierstrass p for the lattice <tau, 1>. Throws PoleAtLatticePoint.
BigComplex weierstrass_p(const BigComplex& z, const BigComplex& tau, Bits prec);
BigComplex weierstrass_p(const BigComplex& z, const Lattice& L, Bits prec);

// Unit-normalized Weber function g^(e) p^{e/2}; degree 0 in (z, w1, w2).
// e must be 2, 4 or 6. Throws PoleAtLatticePoint.
BigComplex weber_value(const BigComplex& z, const Lattice& L, long e, Bits prec);
// Lattice <tau, 1> of the point with its unit count.
BigComplex weber_value(const BigComplex& z, const CMPoint& point, Bits prec);

} // namespace cmforge::modforms
