#pragma once

// Division values of the Weber function and ray class invariants of
// imaginary quadratic fields of class number one.

#include <cmforge/modforms.hpp>
#include <cmforge/numerics.hpp>

#include <vector>

namespace cmforge::division {

using numerics::BigComplex;
using numerics::Bits;

// Weber values at (x1 tau + x2) / N for gcd(x1, x2, N) = 1, with
// 0 <= x1, x2 < N in lexicographic order. Throws std::invalid_argument for N < 2.
std::vector<BigComplex> division_values(long N, const modforms::CMPoint& point, Bits prec);
// N^2 prod_{l | N} (1 - l^-2)
long proper_division_count(long N);

struct DivisionPolynomial {
    long N = 0;
    long D = 0;
    // Low to high, monic.
    std::vector<Rational> coeffs;
    // lcm of the coefficient denominators.
    Integer denominator{1};
    Bits precision = 0;
    double max_residual = 0;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

struct RecognitionOptions {
    Integer max_denominator{1000000};
    long tol_bits = 24;
    Bits cap = 1 << 13;
};

// prod (X - value) over the proper N-division values, coefficients recognized
// as rationals at prec and prec + 64. prec = 0 starts at 256 bits and doubles
// on failure. Throws ClassNumberNotOne unless h(point.D) = 1.
DivisionPolynomial division_polynomial(long N, const modforms::CMPoint& point, Bits prec = 0,
                                       const RecognitionOptions& opts = {});

// x + y theta in the maximal order, theta the root of the principal form.
struct Element {
    long x = 0;
    long y = 0;
    friend bool operator==(const Element&, const Element&) = default;
};

struct RayClassGroup {
    long d_K = 0;
    // Generator of the modulus.
    Element modulus;
    long norm = 0;
    // Units of the order as elements; their images act on (O/m)^*.
    std::vector<Element> units;
    // Invertible residues modulo m, reduced.
    std::vector<Element> invertible;
    // One representative per orbit of the unit action.
    std::vector<Element> representatives;

    long count() const { return static_cast<long>(representatives.size()); }
};

Element multiply(long d_K, const Element& a, const Element& b);
long element_norm(long d_K, const Element& a);

// Throws ClassNumberNotOne unless h(d_K) = 1, std::invalid_argument unless
// d_K is fundamental and 1 <= Nm(m) <= 50.
RayClassGroup ray_class_group(long d_K, const Element& modulus);
// Canonical residue of a modulo the group's modulus.
Element reduce(const RayClassGroup& g, const Element& a);
// Index of the ray class containing a; throws std::invalid_argument if a is
// not prime to the modulus.
std::size_t class_index(const RayClassGroup& g, const Element& a);

// Weber value tau(1; m r^-1) for the lattice m r^-1 = (mu / r) O.
BigComplex ray_class_invariant(const RayClassGroup& g, const Element& r, Bits prec);
BigComplex ray_class_invariant(const RayClassGroup& g, std::size_t index, Bits prec);

struct FieldElement {
    // a + b sqrt(d_K)
    Rational a;
    Rational b;
    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

struct RayClassPolynomial {
    long d_K = 0;
    Element modulus;
    // Low to high, monic.
    std::vector<FieldElement> coeffs;
    Bits precision = 0;
    double max_residual = 0;

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// prod (X - tau(k)) over the ray classes. The trivial modulus gives 1.
RayClassPolynomial ray_class_polynomial(const RayClassGroup& g, Bits prec = 0, const RecognitionOptions& opts = {});

} // namespace cmforge::division
